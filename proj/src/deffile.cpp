#include "vorcal/deffile.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace vorcal {

namespace {

std::string format_parse_error(int line, int col, const std::string& message,
                               const std::vector<std::string>& expected) {
    std::ostringstream os;
    os << "line " << line << ", column " << col << ": " << message;
    if (!expected.empty()) {
        os << " (expected ";
        for (size_t i = 0; i < expected.size(); ++i) os << (i ? " or " : "") << expected[i];
        os << ")";
    }
    return os.str();
}

}  // namespace

ParseError::ParseError(int line_, int col_, const std::string& message,
                       std::vector<std::string> expected_tokens)
    : Error(format_parse_error(line_, col_, message, expected_tokens)), line(line_), col(col_),
      expected(std::move(expected_tokens)) {}

// ---------------------------------------------------------------------------
// tokenizer
// ---------------------------------------------------------------------------

namespace {

struct Token {
    enum class Kind { Ident, Int, Punct, End };
    Kind kind = Kind::End;
    std::string text;
    int line = 0;
    int col = 0;
};

std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    auto advance = [&](size_t n) {
        for (size_t k = 0; k < n; ++k) {
            if (i + k < src.size() && src[i + k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        i += n;
    };
    while (i < src.size()) {
        char c = src[i];
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        Token t;
        t.line = line;
        t.col = col;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i;
            while (j < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
                ++j;
            t.kind = Token::Kind::Ident;
            t.text = std::string(src.substr(i, j - i));
            advance(j - i);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            t.kind = Token::Kind::Int;
            t.text = std::string(src.substr(i, j - i));
            advance(j - i);
        } else if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
            t.kind = Token::Kind::Punct;
            t.text = "->";
            advance(2);
        } else if (std::string("()[]{},:=|^*/+-").find(c) != std::string::npos) {
            t.kind = Token::Kind::Punct;
            t.text = std::string(1, c);
            advance(1);
        } else {
            throw ParseError(line, col, std::string("unexpected character '") + c + "'");
        }
        out.push_back(std::move(t));
    }
    Token end;
    end.kind = Token::Kind::End;
    end.line = line;
    end.col = col;
    out.push_back(end);
    return out;
}

// Statement keywords collide with any name position; exp/pi/liepoisson are
// expression atoms, so they are barred only from coordinate names.
const std::vector<std::string> kReservedNames{"chart",    "scalar", "casimir", "bivector",
                                              "liealg",   "poisson", "map",     "product",
                                              "geometry", "volume",  "on",      "dim",
                                              "inverse"};
const std::vector<std::string> kReservedCoords{"exp", "pi", "liepoisson"};

bool reserved(const std::string& word, bool coordinate) {
    if (std::find(kReservedNames.begin(), kReservedNames.end(), word) != kReservedNames.end())
        return true;
    return coordinate && std::find(kReservedCoords.begin(), kReservedCoords.end(), word) !=
                             kReservedCoords.end();
}

struct TokenStream {
    const std::vector<Token>* tokens;
    size_t pos = 0;

    const Token& peek(size_t ahead = 0) const {
        size_t p = std::min(pos + ahead, tokens->size() - 1);
        return (*tokens)[p];
    }
    const Token& get() {
        const Token& t = (*tokens)[pos];
        if (pos + 1 < tokens->size()) ++pos;
        return t;
    }
    bool at_end() const { return peek().kind == Token::Kind::End; }

    [[noreturn]] void fail(const std::string& message, std::vector<std::string> expected = {}) const {
        const Token& t = peek();
        std::string got = t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
        throw ParseError(t.line, t.col, message + ", found " + got, std::move(expected));
    }

    bool is_punct(const std::string& p, size_t ahead = 0) const {
        const Token& t = peek(ahead);
        return t.kind == Token::Kind::Punct && t.text == p;
    }
    bool is_ident(const std::string& word, size_t ahead = 0) const {
        const Token& t = peek(ahead);
        return t.kind == Token::Kind::Ident && t.text == word;
    }
    void expect_punct(const std::string& p) {
        if (!is_punct(p)) fail("syntax error", {"'" + p + "'"});
        get();
    }
    void expect_ident(const std::string& word) {
        if (!is_ident(word)) fail("syntax error", {"'" + word + "'"});
        get();
    }
    std::string expect_name(const std::string& what, bool coordinate = false) {
        const Token& t = peek();
        if (t.kind != Token::Kind::Ident) fail("expected " + what, {"identifier"});
        if (reserved(t.text, coordinate))
            throw ParseError(t.line, t.col, "'" + t.text + "' is a reserved word; cannot be used as " + what);
        return get().text;
    }
    long long expect_int(const std::string& what) {
        const Token& t = peek();
        if (t.kind != Token::Kind::Int) fail("expected " + what, {"integer"});
        return std::stoll(get().text);
    }
};

// ---------------------------------------------------------------------------
// expression parser (infix + - * / ^, exp(...), pi, rationals, coordinates)
// ---------------------------------------------------------------------------

class ExprParser {
  public:
    ExprParser(TokenStream& ts, const ChartSpec& chart) : ts_(ts), chart_(chart) {}

    ScalarExpr parse() { return parse_sum(); }

  private:
    ScalarExpr parse_sum() {
        ScalarExpr acc = parse_term();
        while (ts_.is_punct("+") || ts_.is_punct("-")) {
            bool plus = ts_.get().text == "+";
            ScalarExpr rhs = parse_term();
            acc = plus ? acc + rhs : acc - rhs;
        }
        return acc;
    }
    ScalarExpr parse_term() {
        ScalarExpr acc = parse_unary();
        while (ts_.is_punct("*") || ts_.is_punct("/")) {
            bool mul = ts_.get().text == "*";
            ScalarExpr rhs = parse_unary();
            if (!mul && rhs.is_structural_zero()) ts_.fail("division by zero");
            acc = mul ? acc * rhs : acc / rhs;
        }
        return acc;
    }
    ScalarExpr parse_unary() {
        if (ts_.is_punct("-")) {
            ts_.get();
            return -parse_unary();
        }
        return parse_power();
    }
    ScalarExpr parse_power() {
        ScalarExpr base = parse_atom();
        if (ts_.is_punct("^")) {
            ts_.get();
            bool neg = false;
            if (ts_.is_punct("-")) {
                ts_.get();
                neg = true;
            }
            long long e = ts_.expect_int("integer exponent");
            return base.pow(neg ? -e : e);
        }
        return base;
    }
    ScalarExpr parse_atom() {
        const Token& t = ts_.peek();
        if (t.kind == Token::Kind::Int) {
            ts_.get();
            return ScalarExpr::rational(Rational(t.text));
        }
        if (ts_.is_punct("(")) {
            ts_.get();
            ScalarExpr inner = parse_sum();
            ts_.expect_punct(")");
            return inner;
        }
        if (ts_.is_ident("exp")) {
            ts_.get();
            ts_.expect_punct("(");
            ScalarExpr arg = parse_sum();
            ts_.expect_punct(")");
            return ScalarExpr::exp(arg);
        }
        if (ts_.is_ident("pi")) {
            ts_.get();
            return ScalarExpr::pi();
        }
        if (t.kind == Token::Kind::Ident) {
            auto idx = chart_.index_of(t.text);
            if (!idx)
                throw ParseError(t.line, t.col,
                                 "unknown coordinate '" + t.text + "' on this chart");
            ts_.get();
            return ScalarExpr::var(*idx);
        }
        ts_.fail("expected an expression", {"number", "coordinate", "'('", "'exp'", "'pi'"});
    }

    TokenStream& ts_;
    const ChartSpec& chart_;
};

// ---------------------------------------------------------------------------
// statement parsers
// ---------------------------------------------------------------------------

class DefParser {
  public:
    DefParser(TokenStream ts, const EngineConfig& config) : ts_(std::move(ts)), config_(config) {}

    Definitions run() {
        while (!ts_.at_end()) parse_statement();
        return std::move(defs_);
    }

  private:
    void check_fresh(const std::string& name, int line) {
        auto dup = [&](int prev, const char* kind) {
            throw ParseError(line, 1,
                             "duplicate name '" + name + "': already declared as " + kind +
                                 " at line " + std::to_string(prev));
        };
        if (auto it = defs_.charts.find(name); it != defs_.charts.end())
            dup(it->second.decl_line, "a chart");
        if (auto it = defs_.scalars.find(name); it != defs_.scalars.end())
            dup(it->second.decl_line, "a scalar");
        if (auto it = defs_.bivectors.find(name); it != defs_.bivectors.end())
            dup(it->second.decl_line, "a bivector");
        if (auto it = defs_.liealgs.find(name); it != defs_.liealgs.end())
            dup(it->second.decl_line, "a Lie algebra");
        if (auto it = defs_.maps.find(name); it != defs_.maps.end())
            dup(it->second.decl_line, "a map");
        if (auto it = defs_.products.find(name); it != defs_.products.end())
            dup(it->second.decl_line, "a product");
        if (auto it = defs_.geometries.find(name); it != defs_.geometries.end())
            dup(it->second.decl_line, "geometric data");
        if (auto it = defs_.volumes.find(name); it != defs_.volumes.end())
            dup(it->second.decl_line, "a volume profile");
    }

    const ChartDecl& resolve_chart(const std::string& name, const Token& at) const {
        auto it = defs_.charts.find(name);
        if (it == defs_.charts.end())
            throw ParseError(at.line, at.col, "unknown chart '" + name + "'");
        return it->second;
    }

    int coordinate_index(const ChartSpec& chart, const Token& at) const {
        auto idx = chart.index_of(at.text);
        if (!idx)
            throw ParseError(at.line, at.col,
                             "unknown coordinate '" + at.text + "' on this chart");
        return *idx;
    }

    void parse_statement() {
        const Token& t = ts_.peek();
        if (t.kind != Token::Kind::Ident)
            ts_.fail("expected a declaration", {"'chart'", "'scalar'", "'casimir'", "'bivector'",
                                               "'liealg'", "'poisson'", "'map'", "'product'",
                                               "'geometry'", "'volume'"});
        const std::string& kw = t.text;
        if (kw == "chart") parse_chart();
        else if (kw == "scalar") parse_scalar(false);
        else if (kw == "casimir") parse_scalar(true);
        else if (kw == "bivector") parse_bivector();
        else if (kw == "liealg") parse_liealg();
        else if (kw == "poisson") parse_poisson();
        else if (kw == "map") parse_map();
        else if (kw == "product") parse_product();
        else if (kw == "geometry") parse_geometry();
        else if (kw == "volume") parse_volume();
        else
            ts_.fail("expected a declaration", {"'chart'", "'scalar'", "'casimir'", "'bivector'",
                                                "'liealg'", "'poisson'", "'map'", "'product'",
                                                "'geometry'", "'volume'"});
    }

    void parse_chart() {
        int line = ts_.get().line;  // 'chart'
        std::string name = ts_.expect_name("a chart name");
        check_fresh(name, line);
        ts_.expect_punct("=");
        ts_.expect_punct("(");
        std::vector<std::string> base, fiber;
        bool split = false;
        bool after_bar = false;
        while (true) {
            std::string coord = ts_.expect_name("a coordinate name", true);
            (after_bar ? fiber : base).push_back(coord);
            if (ts_.is_punct(",")) {
                ts_.get();
                continue;
            }
            if (ts_.is_punct("|")) {
                if (after_bar) ts_.fail("only one base/fiber separator is allowed");
                ts_.get();
                split = true;
                after_bar = true;
                continue;
            }
            break;
        }
        ts_.expect_punct(")");
        ChartDecl decl;
        std::vector<std::string> all = base;
        for (auto& f : fiber) all.push_back(f);
        try {
            decl.chart = make_chart(all);
        } catch (const ExprError& e) {
            throw ParseError(line, 1, e.what());
        }
        decl.base_dim = static_cast<int>(base.size());
        decl.has_split = split;
        decl.decl_line = line;
        defs_.charts.emplace(name, std::move(decl));
        defs_.order.emplace_back(DeclKind::Chart, name);
    }

    // collect the expression tokens of `= EXPR on CHART` up to a top-level 'on'
    ScalarExpr parse_expr_until_on(std::string& chart_name) {
        size_t start = ts_.pos;
        int depth = 0;
        while (true) {
            const Token& t = ts_.peek();
            if (t.kind == Token::Kind::End) ts_.fail("expected 'on CHART'", {"'on'"});
            if (t.kind == Token::Kind::Punct && (t.text == "(" || t.text == "[" || t.text == "{"))
                ++depth;
            if (t.kind == Token::Kind::Punct && (t.text == ")" || t.text == "]" || t.text == "}"))
                --depth;
            if (depth == 0 && t.kind == Token::Kind::Ident && t.text == "on") break;
            ts_.get();
        }
        size_t stop = ts_.pos;  // position of 'on'
        ts_.get();              // consume 'on'
        const Token& chart_tok = ts_.peek();
        chart_name = ts_.expect_name("a chart name");
        const ChartDecl& cd = resolve_chart(chart_name, chart_tok);

        // re-parse the collected span against the chart
        TokenStream sub{ts_.tokens, start};
        ExprParser ep(sub, *cd.chart);
        ScalarExpr e = ep.parse();
        if (sub.pos != stop) sub.fail("unexpected token in expression");
        return e;
    }

    void parse_scalar(bool casimir) {
        int line = ts_.get().line;  // 'scalar' / 'casimir'
        std::string name = ts_.expect_name("a scalar name");
        check_fresh(name, line);
        ts_.expect_punct("=");
        std::string chart_name;
        ScalarExpr e = parse_expr_until_on(chart_name);
        defs_.scalars.emplace(name, ScalarDecl{chart_name, std::move(e), casimir, line});
        defs_.order.emplace_back(DeclKind::Scalar, name);
    }

    void parse_bivector() {
        int line = ts_.get().line;
        std::string name = ts_.expect_name("a bivector name");
        check_fresh(name, line);
        ts_.expect_ident("on");
        const Token& chart_tok = ts_.peek();
        std::string chart_name = ts_.expect_name("a chart name");
        const ChartDecl& cd = resolve_chart(chart_name, chart_tok);
        ts_.expect_punct("{");
        MultivectorField field(cd.chart, 2);
        while (!ts_.is_punct("}")) {
            ts_.expect_punct("(");
            const Token& ti = ts_.peek();
            int i = coordinate_index(*cd.chart, ti);
            ts_.get();
            ts_.expect_punct(",");
            const Token& tj = ts_.peek();
            int j = coordinate_index(*cd.chart, tj);
            ts_.get();
            if (i == j)
                throw ParseError(tj.line, tj.col, "repeated index in a bivector component");
            ts_.expect_punct(")");
            ts_.expect_punct(":");
            ExprParser ep(ts_, *cd.chart);
            field.add_any_order({i, j}, ep.parse());
            if (ts_.is_punct(",")) ts_.get();
        }
        ts_.expect_punct("}");
        defs_.bivectors.emplace(name, BivectorDecl(chart_name, std::move(field), "", line));
        defs_.order.emplace_back(DeclKind::Bivector, name);
    }

    void parse_liealg() {
        int line = ts_.get().line;
        std::string name = ts_.expect_name("a Lie algebra name");
        check_fresh(name, line);
        ts_.expect_ident("dim");
        long long k = ts_.expect_int("the dimension");
        if (k < 1 || k > 64) ts_.fail("Lie algebra dimension out of range");
        std::vector<std::string> basis;
        for (int m = 1; m <= k; ++m) basis.push_back("e" + std::to_string(m));
        auto basis_chart = make_chart(basis);
        ts_.expect_punct("{");
        std::vector<std::tuple<int, int, int, Rational>> entries;
        while (!ts_.is_punct("}")) {
            ts_.expect_punct("[");
            const Token& ti = ts_.peek();
            int i = coordinate_index(*basis_chart, ti);
            ts_.get();
            ts_.expect_punct(",");
            const Token& tj = ts_.peek();
            int j = coordinate_index(*basis_chart, tj);
            ts_.get();
            ts_.expect_punct("]");
            ts_.expect_punct("=");
            const Token& rhs_tok = ts_.peek();
            ExprParser ep(ts_, *basis_chart);
            ScalarExpr rhs = ep.parse();
            // linear combination of basis symbols with rational coefficients
            ScalarExpr remainder = rhs;
            for (int m = 0; m < k; ++m) {
                ScalarExpr cm = rhs.diff(m);
                auto r = cm.as_rational_constant();
                if (!r)
                    throw ParseError(rhs_tok.line, rhs_tok.col,
                                     "bracket value must be a linear combination of basis "
                                     "elements with rational coefficients");
                if (*r != 0) {
                    entries.emplace_back(i, j, m, *r);
                    remainder = remainder - ScalarExpr::rational(*r) * ScalarExpr::var(m);
                }
            }
            if (!remainder.is_structural_zero())
                throw ParseError(rhs_tok.line, rhs_tok.col,
                                 "bracket value has a constant or nonlinear part");
            if (ts_.is_punct(",")) ts_.get();
        }
        ts_.expect_punct("}");
        try {
            defs_.liealgs.emplace(name, LieAlgDecl{LieAlgebraSpec(static_cast<int>(k), entries),
                                                   line});
        } catch (const DataError& e) {
            throw ParseError(line, 1, e.what());
        }
        defs_.order.emplace_back(DeclKind::LieAlg, name);
    }

    void parse_poisson() {
        int line = ts_.get().line;
        std::string name = ts_.expect_name("a bivector name");
        check_fresh(name, line);
        ts_.expect_punct("=");
        ts_.expect_ident("liepoisson");
        ts_.expect_punct("(");
        const Token& alg_tok = ts_.peek();
        std::string alg = ts_.expect_name("a Lie algebra name");
        auto it = defs_.liealgs.find(alg);
        if (it == defs_.liealgs.end())
            throw ParseError(alg_tok.line, alg_tok.col, "unknown Lie algebra '" + alg + "'");
        ts_.expect_punct(")");
        ts_.expect_ident("on");
        const Token& chart_tok = ts_.peek();
        std::string chart_name = ts_.expect_name("a chart name");
        const ChartDecl& cd = resolve_chart(chart_name, chart_tok);
        if (cd.chart->dim() != it->second.spec.dim())
            throw ParseError(chart_tok.line, chart_tok.col,
                             "chart dimension does not match the Lie algebra dimension");
        PoissonStructure p = lie_poisson(it->second.spec, cd.chart);
        defs_.bivectors.emplace(name, BivectorDecl(chart_name, std::move(p.bivector), alg, line));
        defs_.order.emplace_back(DeclKind::Bivector, name);
    }

    void parse_map() {
        int line = ts_.get().line;
        std::string name = ts_.expect_name("a map name");
        check_fresh(name, line);
        ts_.expect_punct(":");
        const Token& src_tok = ts_.peek();
        std::string src = ts_.expect_name("a chart name");
        const ChartDecl& sd = resolve_chart(src, src_tok);
        ts_.expect_punct("->");
        const Token& dst_tok = ts_.peek();
        std::string dst = ts_.expect_name("a chart name");
        const ChartDecl& dd = resolve_chart(dst, dst_tok);

        auto parse_list = [&](const ChartSpec& chart, int expected_count) {
            ts_.expect_punct("{");
            std::vector<ScalarExpr> list;
            while (!ts_.is_punct("}")) {
                ExprParser ep(ts_, chart);
                list.push_back(ep.parse());
                if (ts_.is_punct(",")) ts_.get();
            }
            ts_.expect_punct("}");
            if (static_cast<int>(list.size()) != expected_count)
                ts_.fail("component count mismatch: expected " + std::to_string(expected_count) +
                         " expressions");
            return list;
        };
        std::vector<ScalarExpr> fwd = parse_list(*sd.chart, dd.chart->dim());
        std::optional<std::vector<ScalarExpr>> inv;
        if (ts_.is_ident("inverse")) {
            ts_.get();
            inv = parse_list(*dd.chart, sd.chart->dim());
        }
        try {
            ChartMap map(sd.chart, dd.chart, std::move(fwd), std::move(inv), config_.zero);
            defs_.maps.emplace(name, MapDecl{std::move(map), src, dst, line});
        } catch (const Error& e) {
            throw ParseError(line, 1, e.what());
        }
        defs_.order.emplace_back(DeclKind::Map, name);
    }

    void parse_product() {
        int line = ts_.get().line;
        std::string name = ts_.expect_name("a product name");
        check_fresh(name, line);
        ts_.expect_punct("=");
        auto factor = [&](std::string& biv, std::string& cas) {
            ts_.expect_punct("(");
            const Token& bt = ts_.peek();
            biv = ts_.expect_name("a bivector name");
            if (!defs_.bivectors.count(biv))
                throw ParseError(bt.line, bt.col, "unknown bivector '" + biv + "'");
            ts_.expect_punct(",");
            const Token& ct = ts_.peek();
            cas = ts_.expect_name("a casimir name");
            if (!defs_.scalars.count(cas))
                throw ParseError(ct.line, ct.col, "unknown scalar '" + cas + "'");
            ts_.expect_punct(")");
        };
        ProductDecl decl;
        decl.decl_line = line;
        factor(decl.factor1, decl.casimir1);
        if (!ts_.is_ident("x")) ts_.fail("syntax error", {"'x'"});
        ts_.get();
        factor(decl.factor2, decl.casimir2);
        defs_.products.emplace(name, std::move(decl));
        defs_.order.emplace_back(DeclKind::Product, name);
    }

    void parse_geometry() {
        int line = ts_.get().line;
        std::string name = ts_.expect_name("a geometry name");
        check_fresh(name, line);
        ts_.expect_ident("on");
        const Token& chart_tok = ts_.peek();
        std::string chart_name = ts_.expect_name("a chart name");
        const ChartDecl& cd = resolve_chart(chart_name, chart_tok);
        if (!cd.has_split)
            throw ParseError(chart_tok.line, chart_tok.col,
                             "geometric data requires a chart with a base/fiber split");
        FiberedChart fc(cd.chart, cd.base_dim);
        EhresmannConnection conn(fc);
        MultivectorField nu(fc.total_ptr(), 2);
        BaseIndexedForm phi(fc, 2);

        ts_.expect_punct("{");
        while (!ts_.is_punct("}")) {
            if (ts_.is_ident("gamma")) {
                ts_.get();
                ts_.expect_punct("[");
                const Token& tf = ts_.peek();
                int a = coordinate_index(*cd.chart, tf);
                if (fc.is_base(a))
                    throw ParseError(tf.line, tf.col, "gamma's first index must name a fiber "
                                                      "coordinate");
                ts_.get();
                ts_.expect_punct("]");
                ts_.expect_punct("[");
                const Token& tb = ts_.peek();
                int i = coordinate_index(*cd.chart, tb);
                if (!fc.is_base(i))
                    throw ParseError(tb.line, tb.col, "gamma's second index must name a base "
                                                      "coordinate");
                ts_.get();
                ts_.expect_punct("]");
                ts_.expect_punct("=");
                ExprParser ep(ts_, *cd.chart);
                conn.set(a - fc.base_dim(), i, ep.parse());
            } else if (ts_.is_ident("nu") || ts_.is_ident("phi")) {
                bool is_nu = ts_.get().text == "nu";
                ts_.expect_punct("{");
                while (!ts_.is_punct("}")) {
                    ts_.expect_punct("(");
                    const Token& ti = ts_.peek();
                    int i = coordinate_index(*cd.chart, ti);
                    ts_.get();
                    ts_.expect_punct(",");
                    const Token& tj = ts_.peek();
                    int j = coordinate_index(*cd.chart, tj);
                    ts_.get();
                    ts_.expect_punct(")");
                    ts_.expect_punct(":");
                    ExprParser ep(ts_, *cd.chart);
                    ScalarExpr v = ep.parse();
                    if (is_nu) {
                        nu.add_any_order({i, j}, v);
                    } else {
                        if (j < i) {
                            std::swap(i, j);
                            v = -v;
                        }
                        phi.add({i, j}, v);
                    }
                    if (ts_.is_punct(",")) ts_.get();
                }
                ts_.expect_punct("}");
            } else {
                ts_.fail("expected a geometry item", {"'gamma'", "'nu'", "'phi'"});
            }
            if (ts_.is_punct(",")) ts_.get();
        }
        ts_.expect_punct("}");
        try {
            GeometricData data(std::move(conn), std::move(nu), std::move(phi), config_);
            defs_.geometries.emplace(name, GeometryDecl{std::move(data), chart_name, line});
        } catch (const Error& e) {
            throw ParseError(line, 1, e.what());
        }
        defs_.order.emplace_back(DeclKind::Geometry, name);
    }

    void parse_volume() {
        int line = ts_.get().line;
        std::string name = ts_.expect_name("a volume profile name");
        check_fresh(name, line);
        ts_.expect_punct("(");
        std::vector<std::string> params;
        while (true) {
            params.push_back(ts_.expect_name("a parameter name", true));
            if (ts_.is_punct(",")) {
                ts_.get();
                continue;
            }
            break;
        }
        ts_.expect_punct(")");
        ts_.expect_ident("dim");
        long long k = ts_.expect_int("the leaf dimension");
        ts_.expect_punct("=");
        ChartPtr pchart;
        try {
            pchart = make_chart(params);
        } catch (const ExprError& e) {
            throw ParseError(line, 1, e.what());
        }
        ExprParser ep(ts_, *pchart);
        ScalarExpr vol = ep.parse();
        try {
            defs_.volumes.emplace(
                name, VolumeDecl{make_volume_profile(pchart, static_cast<int>(k), vol, config_),
                                 line});
        } catch (const Error& e) {
            throw ParseError(line, 1, e.what());
        }
        defs_.order.emplace_back(DeclKind::Volume, name);
    }

    TokenStream ts_;
    EngineConfig config_;
    Definitions defs_;
};

}  // namespace

Definitions parse_definitions(std::string_view text, const EngineConfig& config) {
    std::vector<Token> tokens = tokenize(text);
    TokenStream ts{&tokens, 0};
    DefParser parser(std::move(ts), config);
    return parser.run();
}

// ---------------------------------------------------------------------------
// resolution helpers
// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void unknown(const char* kind, const std::string& name) {
    throw DataError(std::string("unknown ") + kind + " '" + name + "'");
}

}  // namespace

const ChartDecl& Definitions::chart(const std::string& name) const {
    auto it = charts.find(name);
    if (it == charts.end()) unknown("chart", name);
    return it->second;
}

const BivectorDecl& Definitions::bivector(const std::string& name) const {
    auto it = bivectors.find(name);
    if (it == bivectors.end()) unknown("bivector", name);
    return it->second;
}

const ScalarDecl& Definitions::scalar(const std::string& name) const {
    auto it = scalars.find(name);
    if (it == scalars.end()) unknown("scalar", name);
    return it->second;
}

const ProductDecl& Definitions::product(const std::string& name) const {
    auto it = products.find(name);
    if (it == products.end()) unknown("product", name);
    return it->second;
}

const GeometryDecl& Definitions::geometry(const std::string& name) const {
    auto it = geometries.find(name);
    if (it == geometries.end()) unknown("geometry", name);
    return it->second;
}

const VolumeDecl& Definitions::volume(const std::string& name) const {
    auto it = volumes.find(name);
    if (it == volumes.end()) unknown("volume profile", name);
    return it->second;
}

const MapDecl& Definitions::chart_map(const std::string& name) const {
    auto it = maps.find(name);
    if (it == maps.end()) unknown("map", name);
    return it->second;
}

PoissonStructure Definitions::build_structure(const std::string& name,
                                              const EngineConfig& config) const {
    return jacobi_check(bivector(name).field, config);
}

WeightedProductSpec Definitions::build_product(const std::string& name,
                                               const EngineConfig& config) const {
    const ProductDecl& p = product(name);
    const BivectorDecl& b1 = bivector(p.factor1);
    const BivectorDecl& b2 = bivector(p.factor2);
    const ScalarDecl& c1 = scalar(p.casimir1);
    const ScalarDecl& c2 = scalar(p.casimir2);
    if (c1.chart != b1.chart)
        throw DataError("product '" + name + "': casimir '" + p.casimir1 +
                        "' lives on a different chart than its factor");
    if (c2.chart != b2.chart)
        throw DataError("product '" + name + "': casimir '" + p.casimir2 +
                        "' lives on a different chart than its factor");
    return WeightedProductSpec({build_structure(p.factor1, config), c1.expr},
                               {build_structure(p.factor2, config), c2.expr}, config.zero);
}

FiberedChart Definitions::fibered(const std::string& chart_name) const {
    const ChartDecl& cd = chart(chart_name);
    if (!cd.has_split)
        throw DataError("chart '" + chart_name + "' has no base/fiber split");
    return FiberedChart(cd.chart, cd.base_dim);
}

// ---------------------------------------------------------------------------
// printer
// ---------------------------------------------------------------------------

namespace {

std::string print_chart(const std::string& name, const ChartDecl& d) {
    std::ostringstream os;
    os << "chart " << name << " = (";
    for (int i = 0; i < d.chart->dim(); ++i) {
        if (i) os << (d.has_split && i == d.base_dim ? " | " : ", ");
        os << d.chart->name(i);
    }
    os << ")";
    return os.str();
}

std::string print_components(const TensorField<Variance::Contra>& f) {
    std::ostringstream os;
    os << "{ ";
    bool first = true;
    for (auto& [idx, v] : f.components()) {
        if (!first) os << ", ";
        first = false;
        os << "(" << f.chart().name(idx[0]) << ", " << f.chart().name(idx[1])
           << "): " << v.str(f.chart());
    }
    os << " }";
    return os.str();
}

}  // namespace

std::string print_definitions(const Definitions& defs) {
    std::ostringstream os;
    for (auto& [kind, name] : defs.order) {
        switch (kind) {
            case DeclKind::Chart: os << print_chart(name, defs.charts.at(name)) << "\n"; break;
            case DeclKind::Scalar: {
                const ScalarDecl& d = defs.scalars.at(name);
                const ChartDecl& cd = defs.charts.at(d.chart);
                os << (d.casimir ? "casimir " : "scalar ") << name << " = "
                   << d.expr.str(*cd.chart) << " on " << d.chart << "\n";
                break;
            }
            case DeclKind::Bivector: {
                const BivectorDecl& d = defs.bivectors.at(name);
                if (!d.liealg.empty()) {
                    os << "poisson " << name << " = liepoisson(" << d.liealg << ") on " << d.chart
                       << "\n";
                } else {
                    os << "bivector " << name << " on " << d.chart << " "
                       << print_components(d.field) << "\n";
                }
                break;
            }
            case DeclKind::LieAlg: {
                const LieAlgDecl& d = defs.liealgs.at(name);
                os << "liealg " << name << " dim " << d.spec.dim() << " { ";
                bool first = true;
                for (int i = 0; i < d.spec.dim(); ++i)
                    for (int j = i + 1; j < d.spec.dim(); ++j) {
                        std::ostringstream rhs;
                        bool any = false;
                        for (int m = 0; m < d.spec.dim(); ++m) {
                            Rational c = d.spec.c(i, j, m);
                            if (c == 0) continue;
                            if (any) rhs << " + ";
                            any = true;
                            if (c != 1) {
                                rhs << numerator(c).str();
                                if (denominator(c) != 1) rhs << "/" << denominator(c).str();
                                rhs << "*";
                            }
                            rhs << "e" << (m + 1);
                        }
                        if (!any) continue;
                        if (!first) os << ", ";
                        first = false;
                        os << "[e" << (i + 1) << ", e" << (j + 1) << "] = " << rhs.str();
                    }
                os << " }\n";
                break;
            }
            case DeclKind::Map: {
                const MapDecl& d = defs.maps.at(name);
                os << "map " << name << ": " << d.source_chart << " -> " << d.target_chart
                   << " { ";
                for (size_t i = 0; i < d.map.components().size(); ++i)
                    os << (i ? ", " : "") << d.map.components()[i].str(d.map.source());
                os << " }";
                if (d.map.has_inverse()) {
                    os << " inverse { ";
                    for (size_t i = 0; i < d.map.inverse_components().size(); ++i)
                        os << (i ? ", " : "") << d.map.inverse_components()[i].str(d.map.target());
                    os << " }";
                }
                os << "\n";
                break;
            }
            case DeclKind::Product: {
                const ProductDecl& d = defs.products.at(name);
                os << "product " << name << " = (" << d.factor1 << ", " << d.casimir1 << ") x ("
                   << d.factor2 << ", " << d.casimir2 << ")\n";
                break;
            }
            case DeclKind::Geometry: {
                const GeometryDecl& d = defs.geometries.at(name);
                const FiberedChart& fc = d.data.chart();
                os << "geometry " << name << " on " << d.chart << " { ";
                bool first = true;
                for (int a = 0; a < fc.fiber_dim(); ++a)
                    for (int i = 0; i < fc.base_dim(); ++i) {
                        ScalarExpr g = d.data.connection().gamma(a, i);
                        if (g.is_structural_zero()) continue;
                        if (!first) os << ", ";
                        first = false;
                        os << "gamma[" << fc.total().name(fc.fiber_index(a)) << "]["
                           << fc.total().name(i) << "] = " << g.str(fc.total());
                    }
                if (!d.data.nu().structurally_zero()) {
                    if (!first) os << ", ";
                    first = false;
                    os << "nu " << print_components(d.data.nu());
                }
                if (!first) os << ", ";
                os << "phi { ";
                bool pfirst = true;
                for (auto& [idx, v] : d.data.phi().components()) {
                    if (!pfirst) os << ", ";
                    pfirst = false;
                    os << "(" << fc.total().name(idx[0]) << ", " << fc.total().name(idx[1])
                       << "): " << v.str(fc.total());
                }
                os << " } }\n";
                break;
            }
            case DeclKind::Volume: {
                const VolumeDecl& d = defs.volumes.at(name);
                os << "volume " << name << " (";
                for (int i = 0; i < d.profile.params->dim(); ++i)
                    os << (i ? ", " : "") << d.profile.params->name(i);
                os << ") dim " << d.profile.leaf_dim << " = "
                   << d.profile.volume.str(*d.profile.params) << "\n";
                break;
            }
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// structural equality and merging
// ---------------------------------------------------------------------------

namespace {

bool chart_eq(const ChartDecl& a, const ChartDecl& b) {
    return *a.chart == *b.chart && a.base_dim == b.base_dim && a.has_split == b.has_split;
}

bool scalar_eq(const ScalarDecl& a, const ScalarDecl& b) {
    return a.chart == b.chart && a.expr == b.expr && a.casimir == b.casimir;
}

bool bivector_eq(const BivectorDecl& a, const BivectorDecl& b) {
    return a.chart == b.chart && a.field == b.field && a.liealg == b.liealg;
}

bool liealg_eq(const LieAlgDecl& a, const LieAlgDecl& b) {
    if (a.spec.dim() != b.spec.dim()) return false;
    for (int i = 0; i < a.spec.dim(); ++i)
        for (int j = 0; j < a.spec.dim(); ++j)
            for (int m = 0; m < a.spec.dim(); ++m)
                if (a.spec.c(i, j, m) != b.spec.c(i, j, m)) return false;
    return true;
}

bool map_eq(const MapDecl& a, const MapDecl& b) {
    if (a.source_chart != b.source_chart || a.target_chart != b.target_chart) return false;
    if (a.map.components() != b.map.components()) return false;
    if (a.map.has_inverse() != b.map.has_inverse()) return false;
    if (a.map.has_inverse() && a.map.inverse_components() != b.map.inverse_components())
        return false;
    return true;
}

bool product_eq(const ProductDecl& a, const ProductDecl& b) {
    return a.factor1 == b.factor1 && a.casimir1 == b.casimir1 && a.factor2 == b.factor2 &&
           a.casimir2 == b.casimir2;
}

bool geometry_eq(const GeometryDecl& a, const GeometryDecl& b) {
    if (a.chart != b.chart) return false;
    if (!(a.data.chart() == b.data.chart())) return false;
    if (!(a.data.nu() == b.data.nu())) return false;
    if (!(a.data.phi() == b.data.phi())) return false;
    const FiberedChart& fc = a.data.chart();
    for (int x = 0; x < fc.fiber_dim(); ++x)
        for (int i = 0; i < fc.base_dim(); ++i)
            if (!(a.data.connection().gamma(x, i) == b.data.connection().gamma(x, i)))
                return false;
    return true;
}

bool volume_eq(const VolumeDecl& a, const VolumeDecl& b) {
    return *a.profile.params == *b.profile.params && a.profile.leaf_dim == b.profile.leaf_dim &&
           a.profile.volume == b.profile.volume;
}

template <class M, class Eq>
bool map_equal(const M& a, const M& b, Eq eq) {
    if (a.size() != b.size()) return false;
    for (auto& [k, v] : a) {
        auto it = b.find(k);
        if (it == b.end() || !eq(v, it->second)) return false;
    }
    return true;
}

}  // namespace

bool structurally_equal(const Definitions& a, const Definitions& b) {
    return map_equal(a.charts, b.charts, chart_eq) && map_equal(a.scalars, b.scalars, scalar_eq) &&
           map_equal(a.bivectors, b.bivectors, bivector_eq) &&
           map_equal(a.liealgs, b.liealgs, liealg_eq) && map_equal(a.maps, b.maps, map_eq) &&
           map_equal(a.products, b.products, product_eq) &&
           map_equal(a.geometries, b.geometries, geometry_eq) &&
           map_equal(a.volumes, b.volumes, volume_eq);
}

void merge_definitions(Definitions& into, const Definitions& from) {
    auto merge_map = [](auto& dst, const auto& src, auto eq, const char* kind,
                        std::vector<std::pair<DeclKind, std::string>>& order, DeclKind k,
                        const std::vector<std::pair<DeclKind, std::string>>& src_order) {
        for (auto& [kind2, name] : src_order) {
            if (kind2 != k) continue;
            auto it = src.find(name);
            auto existing = dst.find(name);
            if (existing == dst.end()) {
                dst.emplace(name, it->second);
                order.emplace_back(k, name);
            } else if (!eq(existing->second, it->second)) {
                throw DataError(std::string("conflicting redefinition of ") + kind + " '" + name +
                                "'");
            }
        }
    };
    merge_map(into.charts, from.charts, chart_eq, "chart", into.order, DeclKind::Chart, from.order);
    merge_map(into.scalars, from.scalars, scalar_eq, "scalar", into.order, DeclKind::Scalar,
              from.order);
    merge_map(into.liealgs, from.liealgs, liealg_eq, "liealg", into.order, DeclKind::LieAlg,
              from.order);
    merge_map(into.bivectors, from.bivectors, bivector_eq, "bivector", into.order,
              DeclKind::Bivector, from.order);
    merge_map(into.maps, from.maps, map_eq, "map", into.order, DeclKind::Map, from.order);
    merge_map(into.products, from.products, product_eq, "product", into.order, DeclKind::Product,
              from.order);
    merge_map(into.geometries, from.geometries, geometry_eq, "geometry", into.order,
              DeclKind::Geometry, from.order);
    merge_map(into.volumes, from.volumes, volume_eq, "volume", into.order, DeclKind::Volume,
              from.order);
}

}  // namespace vorcal
