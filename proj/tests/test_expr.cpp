#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace diffgeo;

namespace {

double eval(const std::string& text, std::vector<std::string> names = {}, std::vector<double> values = {}) {
  const Expr e = parse_expression(text).bind(names);
  return e.evaluate(std::span<const double>(values));
}

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::Domain;
}

const char* kHelix = R"(# helix
curve helix
param t in [0, 4*pi]
const a = 1
const b = 0.5
x = a*cos(t)
y = a*sin(t)
z = b*t
)";

}  // namespace

TEST(Tokenize, IdentifiersOperatorsAndParens) {
  const auto toks = tokenize("a*cos(t)");
  ASSERT_EQ(toks.size(), 6u);
  const TokenKind kinds[] = {TokenKind::Identifier, TokenKind::Operator, TokenKind::Identifier,
                             TokenKind::Paren,      TokenKind::Identifier, TokenKind::Paren};
  const char* lexemes[] = {"a", "*", "cos", "(", "t", ")"};
  for (std::size_t i = 0; i < toks.size(); ++i) {
    EXPECT_EQ(toks[i].kind, kinds[i]) << i;
    EXPECT_EQ(toks[i].lexeme, lexemes[i]);
  }
  EXPECT_EQ(toks[2].position, 2u);
}

TEST(Tokenize, NumbersWithExponents) {
  const auto toks = tokenize("1.5e2 .25 3E-1");
  ASSERT_EQ(toks.size(), 3u);
  EXPECT_EQ(toks[0].number, 150.0);
  EXPECT_EQ(toks[1].number, 0.25);
  EXPECT_DOUBLE_EQ(toks[2].number, 0.3);
}

TEST(Tokenize, PositionsAreNondecreasingAndCommentsSkipped) {
  const auto toks = tokenize("x + y # trailing words\n  * 2");
  ASSERT_EQ(toks.size(), 5u);
  for (std::size_t i = 1; i < toks.size(); ++i) EXPECT_LE(toks[i - 1].position, toks[i].position);
  EXPECT_EQ(toks.back().lexeme, "2");
}

TEST(Tokenize, UnknownCharacterIsReported) {
  try {
    tokenize("x @ y");
    FAIL();
  } catch (const LexError& e) {
    EXPECT_EQ(e.position(), 2u);
    EXPECT_EQ(e.character(), '@');
    EXPECT_EQ(e.code(), ErrorCode::Lex);
  }
}

TEST(Tokenize, KeywordsAreRecognized) {
  const auto toks = tokenize("param t in [0, 1]");
  EXPECT_EQ(toks[0].kind, TokenKind::Keyword);
  EXPECT_EQ(toks[2].kind, TokenKind::Keyword);
  EXPECT_TRUE(is_keyword("surface"));
  EXPECT_TRUE(is_reserved("sin"));
  EXPECT_TRUE(is_reserved("pi"));
  EXPECT_FALSE(is_reserved("a"));
}

TEST(Parse, Precedence) {
  EXPECT_EQ(eval("2+3*4"), 14.0);
  EXPECT_EQ(eval("-2^2"), -4.0);
  EXPECT_EQ(eval("2^3^2"), 512.0);
  EXPECT_EQ(eval("8/4/2"), 1.0);
  EXPECT_EQ(eval("2-3-4"), -5.0);
  EXPECT_EQ(eval("2^-1"), 0.5);
  EXPECT_NEAR(eval("sin(pi/6) + cos(0)"), 1.5, 1e-15);
  EXPECT_EQ(eval("a*b + c", {"a", "b", "c"}, {2, 3, 4}), 10.0);
}

TEST(Parse, IncompleteInputExpectsOperandOrParen) {
  try {
    parse_expression("2*(1+");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 5u);
    EXPECT_FALSE(e.expected().empty());
  }
  EXPECT_THROW(parse_expression("(1+2"), ParseError);
  EXPECT_THROW(parse_expression("1 2"), ParseError);
  EXPECT_THROW(parse_expression(""), ParseError);
}

TEST(Parse, FunctionsTakeOneArgument) {
  EXPECT_EQ(code_of([] { parse_expression("sin(1, 2)"); }), ErrorCode::Arity);
  EXPECT_EQ(code_of([] { parse_expression("sin + 1"); }), ErrorCode::Arity);
  EXPECT_EQ(code_of([] { parse_expression("foo(1)"); }), ErrorCode::Name);
}

TEST(Parse, BindRejectsUndeclaredNames) {
  EXPECT_EQ(code_of([] { parse_expression("a + q").bind({"a"}); }), ErrorCode::Name);
  const auto vars = parse_expression("b*x + a*x + pi").variables();
  EXPECT_EQ(vars, (std::vector<std::string>{"a", "b", "x"}));
}

TEST(Parse, RoundTripOfRandomTrees) {
  test::TreeGenerator gen(99, {"u", "v"}, {6, true});
  for (int i = 0; i < 300; ++i) {
    const Expr e = gen.next();
    const std::string text = e.to_string();
    EXPECT_EQ(parse_expression(text), e) << text;
  }
}

TEST(Evaluate, DomainErrors) {
  EXPECT_EQ(code_of([] { eval("1/(x-x)", {"x"}, {1}); }), ErrorCode::Domain);
  EXPECT_EQ(code_of([] { eval("x^0.5", {"x"}, {-1}); }), ErrorCode::Domain);
  EXPECT_EQ(code_of([] { eval("log(x)", {"x"}, {0}); }), ErrorCode::Domain);
  EXPECT_EQ(eval("x^2", {"x"}, {-3}), 9.0);
}

TEST(Definition, HelixPositionAndVelocity) {
  const ShapeDefinition def = load_definition(kHelix);
  EXPECT_EQ(def.kind, ShapeKind::Curve);
  EXPECT_EQ(def.name, "helix");
  ASSERT_EQ(def.parameters.size(), 1u);
  EXPECT_NEAR(def.parameters[0].domain.hi, 4 * std::numbers::pi, 1e-15);
  const auto t = Jet1<2>::variable(0.0);
  const auto r = def.evaluate(std::span<const Jet1<2>>(&t, 1));
  EXPECT_EQ(value_of(r), (Vec3{1, 0, 0}));
  EXPECT_NEAR(r.x[1], 0.0, 1e-15);
  EXPECT_NEAR(r.y[1], 1.0, 1e-15);
  EXPECT_NEAR(r.z[1], 0.5, 1e-15);
}

TEST(Definition, SurfacesGiveTangentVectors) {
  const auto plane = surface_from_definition(load_definition("surface p\nparam u in [-1,1]\nparam v in [-1,1]\nx = u\ny = v\nz = 0\n"));
  const SurfaceFrame f = surface_frame(plane, 0.3, -0.2);
  EXPECT_EQ(f.E1, (Vec3{1, 0, 0}));
  EXPECT_EQ(f.E2, (Vec3{0, 1, 0}));

  const auto monge = surface_from_definition(
      load_definition("surface m\nparam u in [-2,2]\nparam v in [-2,2]\nx = u\ny = v\nz = u^2 + v^2\n"));
  const SurfaceFrame m = surface_frame(monge, 1, 0);
  EXPECT_NEAR(m.E1.x, 1, 1e-15);
  EXPECT_NEAR(m.E1.z, 2, 1e-15);
  EXPECT_NEAR(m.E2.z, 0, 1e-15);
}

TEST(Definition, OutOfDomainParametersAreRejectedUnlessClamped) {
  const ShapeDefinition def = load_definition(kHelix);
  const auto strict = curve_from_definition(def);
  EXPECT_EQ(code_of([&] { strict.position(20.0); }), ErrorCode::OutOfDomain);
  const auto clamped = curve_from_definition(def, true);
  const Vec3 end = clamped.position(20.0);
  EXPECT_NEAR(end.z, 0.5 * 4 * std::numbers::pi, 1e-12);
}

TEST(Definition, JetsMatchDifferencesOfValues) {
  const auto c = curve_from_definition(load_definition(kHelix));
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    const double t = test::interior(rng, c.domain());
    const CurvePoint j = c.jet(t);
    const double d = test::central_difference([&](double s) { return c.position(s).x; }, t, 1e-3);
    EXPECT_LT(test::relative_error(j.x[1], d), 1e-6);
  }
}

TEST(Definition, Errors) {
  EXPECT_EQ(code_of([] { load_definition("curve c\nparam t in [0,1]\nx = t\ny = q\nz = 0\n"); }), ErrorCode::Name);
  EXPECT_EQ(code_of([] { load_definition("curve c\nparam t in [0,1]\nparam s in [0,1]\nx = t\ny = s\nz = 0\n"); }),
            ErrorCode::Arity);
  EXPECT_EQ(code_of([] { load_definition("curve c\nparam t in [0,1]\nx = t\ny = t\n"); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([] { load_definition("curve c\nparam t in [1,0]\nx = t\ny = t\nz = t\n"); }),
            ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { load_definition("curve c\nparam sin in [0,1]\nx = 1\ny = 1\nz = 1\n"); }), ErrorCode::Name);
}
