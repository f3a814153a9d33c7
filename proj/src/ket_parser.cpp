#include "gme/ket.hpp"

#include "gme/error.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <optional>

namespace gme {

const char* to_string(ParseErrorKind kind) {
    switch (kind) {
    case ParseErrorKind::Syntax: return "syntax";
    case ParseErrorKind::MixedArity: return "mixed-arity";
    case ParseErrorKind::IndexOutOfRange: return "index-out-of-range";
    case ParseErrorKind::DimsMismatch: return "dims-mismatch";
    case ParseErrorKind::ZeroState: return "zero-state";
    case ParseErrorKind::InvalidValue: return "invalid-value";
    case ParseErrorKind::NormViolation: return "norm-violation";
    }
    return "unknown";
}

namespace {

std::string format_message(ParseErrorKind kind, std::size_t line, std::size_t column, const std::string& message) {
    std::string out = to_string(kind);
    if (line > 0) out += " at " + std::to_string(line) + ":" + std::to_string(column);
    return out + ": " + message;
}

} // namespace

ParseError::ParseError(ParseErrorKind kind, std::size_t line, std::size_t column, const std::string& message)
    : Error(format_message(kind, line, column, message)), kind_(kind), line_(line), column_(column) {}

namespace {

enum class Tok { Number, Ident, Ket, Plus, Minus, Star, Slash, LParen, RParen, End };

struct Token {
    Tok type = Tok::End;
    std::size_t pos = 0;
    double number = 0.0;
    bool imaginary = false;
    std::string ident;
    std::vector<std::size_t> levels;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::size_t pos() const { return pos_; }

    [[noreturn]] void fail(ParseErrorKind kind, std::size_t at, const std::string& msg) const {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < at && i < text_.size(); ++i) {
            if (text_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(kind, line, col, msg);
    }

    void skip_space() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    /// `dims: d1 d2 ...` on the first non-comment line.
    std::optional<Dims> header() {
        skip_space();
        if (text_.substr(pos_, 5) != "dims:") return std::nullopt;
        const std::size_t start = pos_;
        pos_ += 5;
        Dims dims;
        while (pos_ < text_.size() && text_[pos_] != '\n' && text_[pos_] != '#') {
            const char c = text_[pos_];
            if (c == ' ' || c == '\t' || c == '\r') {
                ++pos_;
                continue;
            }
            const std::size_t at = pos_;
            const std::size_t v = read_integer();
            if (v == 0) fail(ParseErrorKind::InvalidValue, at, "dimension must be positive");
            dims.push_back(v);
        }
        if (dims.empty()) fail(ParseErrorKind::Syntax, start, "dims header lists no dimensions");
        return dims;
    }

    Token next() {
        skip_space();
        Token t;
        t.pos = pos_;
        if (pos_ >= text_.size()) return t;
        const char c = text_[pos_];
        switch (c) {
        case '+': ++pos_; t.type = Tok::Plus; return t;
        case '-': ++pos_; t.type = Tok::Minus; return t;
        case '*': ++pos_; t.type = Tok::Star; return t;
        case '/': ++pos_; t.type = Tok::Slash; return t;
        case '(': ++pos_; t.type = Tok::LParen; return t;
        case ')': ++pos_; t.type = Tok::RParen; return t;
        case '|': return ket(t);
        default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number(t);
        if (std::isalpha(static_cast<unsigned char>(c))) {
            while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            t.type = Tok::Ident;
            t.ident = std::string(text_.substr(t.pos, pos_ - t.pos));
            return t;
        }
        fail(ParseErrorKind::Syntax, pos_, std::string("unexpected character '") + c + "'");
    }

private:
    std::size_t read_integer() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) fail(ParseErrorKind::Syntax, start, "expected an integer");
        std::size_t v = 0;
        const auto r = std::from_chars(text_.data() + start, text_.data() + pos_, v);
        if (r.ec != std::errc{}) fail(ParseErrorKind::InvalidValue, start, "integer out of range");
        return v;
    }

    Token number(Token t) {
        const std::size_t start = pos_;
        auto digits = [&] {
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        };
        digits();
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            digits();
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t p = pos_ + 1;
            if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
            if (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) {
                pos_ = p;
                digits();
            }
        }
        const auto r = std::from_chars(text_.data() + start, text_.data() + pos_, t.number);
        if (r.ec != std::errc{} || r.ptr != text_.data() + pos_) fail(ParseErrorKind::Syntax, start, "malformed number");
        t.type = Tok::Number;
        if (pos_ < text_.size() && text_[pos_] == 'i' &&
            (pos_ + 1 >= text_.size() || !std::isalnum(static_cast<unsigned char>(text_[pos_ + 1])))) {
            ++pos_;
            t.imaginary = true;
        }
        return t;
    }

    Token ket(Token t) {
        ++pos_; // '|'
        std::string body;
        bool closed = false;
        while (pos_ < text_.size()) {
            if (text_[pos_] == '>') {
                ++pos_;
                closed = true;
                break;
            }
            if (text_.substr(pos_, 3) == "\xE2\x9F\xA9") { // U+27E9
                pos_ += 3;
                closed = true;
                break;
            }
            const char c = text_[pos_];
            if (c == '\n') break;
            if (c != ' ' && c != '\t') {
                if (!std::isdigit(static_cast<unsigned char>(c)) && c != ',') {
                    fail(ParseErrorKind::Syntax, pos_, std::string("unexpected '") + c + "' inside ket");
                }
                body += c;
            }
            ++pos_;
        }
        if (!closed) fail(ParseErrorKind::Syntax, t.pos, "unterminated ket");
        if (body.empty()) fail(ParseErrorKind::Syntax, t.pos, "empty ket");
        if (body.find(',') == std::string::npos) {
            for (char c : body) t.levels.push_back(static_cast<std::size_t>(c - '0'));
        } else {
            std::size_t start = 0;
            while (true) {
                const std::size_t comma = body.find(',', start);
                const std::string_view part = std::string_view(body).substr(start, comma == std::string::npos ? std::string::npos : comma - start);
                std::size_t v = 0;
                const auto r = std::from_chars(part.data(), part.data() + part.size(), v);
                if (part.empty() || r.ec != std::errc{} || r.ptr != part.data() + part.size()) {
                    fail(ParseErrorKind::Syntax, t.pos, "malformed level list in ket");
                }
                t.levels.push_back(v);
                if (comma == std::string::npos) break;
                start = comma + 1;
            }
        }
        t.type = Tok::Ket;
        return t;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

struct Acc {
    cplx coeff;
    double magnitude = 0.0; // sum of |contributions|, for cancellation detection
};

struct Value {
    bool is_state = false;
    cplx scalar{0.0, 0.0};
    std::map<std::vector<std::size_t>, Acc> terms;
};

class Parser {
public:
    explicit Parser(std::string_view text) : lex_(text) {}

    KetExpr run() {
        if (auto dims = lex_.header()) {
            declared_ = std::move(*dims);
        }
        advance();
        if (cur_.type == Tok::End) lex_.fail(ParseErrorKind::Syntax, cur_.pos, "empty state expression");
        Value v = expr();
        if (cur_.type != Tok::End) lex_.fail(ParseErrorKind::Syntax, cur_.pos, "unexpected token after expression");
        if (!v.is_state) lex_.fail(ParseErrorKind::Syntax, 0, "expression contains no ket");

        KetExpr out;
        for (const auto& [levels, acc] : v.terms) {
            if (!std::isfinite(acc.coeff.real()) || !std::isfinite(acc.coeff.imag())) {
                throw ParseError(ParseErrorKind::InvalidValue, 0, 0, "non-finite coefficient");
            }
            if (acc.coeff == cplx{0.0, 0.0} || std::abs(acc.coeff) <= 1e-14 * acc.magnitude) continue;
            out.terms.push_back({acc.coeff, levels});
        }
        if (out.terms.empty()) throw ParseError(ParseErrorKind::ZeroState, 0, 0, "state is identically zero");
        if (declared_) {
            out.dims = *declared_;
            out.dims_declared = true;
        } else {
            out.dims.assign(arity_, 1);
            for (const auto& t : out.terms) {
                for (std::size_t k = 0; k < arity_; ++k) out.dims[k] = std::max(out.dims[k], t.levels[k] + 1);
            }
        }
        return out;
    }

private:
    void advance() { cur_ = lex_.next(); }

    [[noreturn]] void fail(const Token& at, const std::string& msg, ParseErrorKind kind = ParseErrorKind::Syntax) const {
        lex_.fail(kind, at.pos, msg);
    }

    void expect(Tok type, const char* what) {
        if (cur_.type != type) fail(cur_, std::string("expected ") + what);
        advance();
    }

    Value add(Value a, const Value& b, double sign, const Token& at) const {
        if (a.is_state != b.is_state) fail(at, "cannot add a scalar and a state");
        if (!a.is_state) {
            a.scalar += sign * b.scalar;
            return a;
        }
        for (const auto& [levels, acc] : b.terms) {
            auto& dst = a.terms[levels];
            dst.coeff += sign * acc.coeff;
            dst.magnitude += acc.magnitude;
        }
        return a;
    }

    static Value scale(Value v, cplx s) {
        for (auto& [levels, acc] : v.terms) {
            acc.coeff *= s;
            acc.magnitude *= std::abs(s);
        }
        return v;
    }

    Value mul(Value a, Value b, const Token& at) const {
        if (a.is_state && b.is_state) fail(at, "product of two states; write the tensor product as a single ket");
        if (!a.is_state && !b.is_state) {
            a.scalar *= b.scalar;
            return a;
        }
        return a.is_state ? scale(std::move(a), b.scalar) : scale(std::move(b), a.scalar);
    }

    Value div(Value a, const Value& b, const Token& at) const {
        if (b.is_state) fail(at, "cannot divide by a state");
        if (b.scalar == cplx{0.0, 0.0}) fail(at, "division by zero", ParseErrorKind::InvalidValue);
        if (!a.is_state) {
            a.scalar /= b.scalar;
            return a;
        }
        return scale(std::move(a), 1.0 / b.scalar);
    }

    // expr := ['+'|'-'] term (('+'|'-') term)*
    Value expr() {
        double sign = 1.0;
        if (cur_.type == Tok::Plus || cur_.type == Tok::Minus) {
            sign = cur_.type == Tok::Minus ? -1.0 : 1.0;
            advance();
        }
        Value v = term();
        if (sign < 0) v = v.is_state ? scale(std::move(v), -1.0) : Value{false, -v.scalar, {}};
        while (cur_.type == Tok::Plus || cur_.type == Tok::Minus) {
            const Token op = cur_;
            advance();
            Value rhs = term();
            v = add(std::move(v), rhs, op.type == Tok::Minus ? -1.0 : 1.0, op);
        }
        return v;
    }

    // term := unary (('*'|'/') unary | unary)*   (juxtaposition before ket, '(' or a name)
    Value term() {
        Value v = unary();
        while (true) {
            const Token op = cur_;
            if (op.type == Tok::Star) {
                advance();
                v = mul(std::move(v), unary(), op);
            } else if (op.type == Tok::Slash) {
                advance();
                v = div(std::move(v), unary(), op);
            } else if (op.type == Tok::Ket || op.type == Tok::LParen || op.type == Tok::Ident) {
                v = mul(std::move(v), unary(), op);
            } else {
                return v;
            }
        }
    }

    Value unary() {
        if (cur_.type == Tok::Minus) {
            advance();
            Value v = unary();
            return v.is_state ? scale(std::move(v), -1.0) : Value{false, -v.scalar, {}};
        }
        if (cur_.type == Tok::Plus) {
            advance();
            return unary();
        }
        return primary();
    }

    Value scalar_arg(const char* fn) {
        const Token at = cur_;
        expect(Tok::LParen, "'(' after function name");
        Value v = expr();
        expect(Tok::RParen, "')'");
        if (v.is_state) fail(at, std::string(fn) + "() of a state");
        return v;
    }

    Value primary() {
        const Token t = cur_;
        switch (t.type) {
        case Tok::Number:
            advance();
            return Value{false, t.imaginary ? cplx{0.0, t.number} : cplx{t.number, 0.0}, {}};
        case Tok::Ket: {
            advance();
            return ket_value(t);
        }
        case Tok::LParen: {
            advance();
            Value v = expr();
            expect(Tok::RParen, "')'");
            return v;
        }
        case Tok::Ident: {
            advance();
            if (t.ident == "i") return Value{false, {0.0, 1.0}, {}};
            if (t.ident == "pi") return Value{false, {std::numbers::pi, 0.0}, {}};
            if (t.ident == "sqrt") {
                Value v = scalar_arg("sqrt");
                const cplx a = v.scalar;
                if (std::abs(a.imag()) > 1e-15 * std::max(1.0, std::abs(a.real())) || !(a.real() > 0.0)) {
                    fail(t, "sqrt argument must be a positive real number", ParseErrorKind::InvalidValue);
                }
                return Value{false, {std::sqrt(a.real()), 0.0}, {}};
            }
            if (t.ident == "exp") {
                Value v = scalar_arg("exp");
                return Value{false, std::exp(v.scalar), {}};
            }
            fail(t, "unknown name '" + t.ident + "'");
        }
        case Tok::End: fail(t, "unexpected end of input");
        default: fail(t, "expected a coefficient, ket or '('");
        }
    }

    Value ket_value(const Token& t) {
        const std::size_t n = t.levels.size();
        if (arity_ == 0) {
            arity_ = n;
            if (declared_ && declared_->size() != n) {
                fail(t, "ket has " + std::to_string(n) + " modes but dims header declares " +
                            std::to_string(declared_->size()),
                     ParseErrorKind::DimsMismatch);
            }
        } else if (n != arity_) {
            fail(t, "ket has " + std::to_string(n) + " modes, earlier kets have " + std::to_string(arity_),
                 ParseErrorKind::MixedArity);
        }
        if (declared_) {
            for (std::size_t k = 0; k < n; ++k) {
                if (t.levels[k] >= (*declared_)[k]) {
                    fail(t, "level " + std::to_string(t.levels[k]) + " exceeds dimension " +
                                std::to_string((*declared_)[k]) + " of mode " + std::to_string(k + 1),
                         ParseErrorKind::IndexOutOfRange);
                }
            }
        }
        Value v;
        v.is_state = true;
        v.terms[t.levels] = Acc{{1.0, 0.0}, 1.0};
        return v;
    }

    Lexer lex_;
    Token cur_;
    std::optional<Dims> declared_;
    std::size_t arity_ = 0;
};

std::string render_levels(const std::vector<std::size_t>& levels, bool compact) {
    std::string s = "|";
    for (std::size_t k = 0; k < levels.size(); ++k) {
        if (!compact && k > 0) s += ',';
        s += std::to_string(levels[k]);
    }
    return s + ">";
}

std::string render_coeff(cplx c) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "(%.17g%+.17gi)", c.real(), c.imag());
    return buf;
}

} // namespace

KetExpr parse_ket(std::string_view text) { return Parser(text).run(); }

std::string render_ket(const KetExpr& e) {
    std::string out = "dims:";
    bool compact = true;
    for (std::size_t d : e.dims) {
        out += " " + std::to_string(d);
        compact = compact && d <= 10;
    }
    out += "\n";
    for (std::size_t i = 0; i < e.terms.size(); ++i) {
        out += i == 0 ? "  " : "+ ";
        out += render_coeff(e.terms[i].coeff) + "*" + render_levels(e.terms[i].levels, compact) + "\n";
    }
    return out;
}

TensorBuild to_tensor(const KetExpr& e, NormPolicy policy) {
    if (e.terms.empty()) throw ParseError(ParseErrorKind::ZeroState, 0, 0, "state has no terms");
    double sumsq = 0.0;
    for (const auto& t : e.terms) sumsq += std::norm(t.coeff);
    const double norm = std::sqrt(sumsq);
    if (!(norm > 0.0)) throw ParseError(ParseErrorKind::ZeroState, 0, 0, "state is identically zero");
    double scale = 1.0;
    if (policy == NormPolicy::Auto) {
        scale = 1.0 / norm;
    } else if (std::abs(norm - 1.0) > 1e-9) {
        throw ParseError(ParseErrorKind::NormViolation, 0, 0, "state norm is " + std::to_string(norm) + ", expected 1");
    }
    StateTensor shape(e.dims);
    std::vector<cplx> entries(shape.size());
    for (const auto& t : e.terms) {
        std::size_t flat = 0;
        if (t.levels.size() != e.dims.size()) throw ParseError(ParseErrorKind::MixedArity, 0, 0, "term arity differs from dims");
        for (std::size_t k = 0; k < e.dims.size(); ++k) {
            if (t.levels[k] >= e.dims[k]) {
                throw ParseError(ParseErrorKind::IndexOutOfRange, 0, 0, "level exceeds dimension of mode " + std::to_string(k + 1));
            }
            flat = flat * e.dims[k] + t.levels[k];
        }
        entries[flat] = std::conj(t.coeff) * scale;
    }
    return {StateTensor(e.dims, std::move(entries)), scale};
}

KetExpr from_tensor(const StateTensor& t) {
    KetExpr e;
    e.dims = t.dims();
    e.dims_declared = true;
    std::vector<std::size_t> idx(t.rank(), 0);
    std::size_t flat = 0;
    const auto entries = t.entries();
    do {
        const cplx a = entries[flat++];
        if (a != cplx{0.0, 0.0}) e.terms.push_back({std::conj(a), idx});
    } while (next_index(idx, e.dims));
    return e;
}

} // namespace gme
