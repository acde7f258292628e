#include "qgt/errors.hpp"
#include "qgt/presentation.hpp"

#include <cctype>
#include <sstream>

namespace qgt {

namespace {

struct Token {
    enum Kind { Ident, Number, Star, Slash, Plus, Minus, End } kind;
    std::string text;
    int col; // 1-based
};

class LineLexer {
public:
    LineLexer(const std::string& line, int lineno) : line_(line), lineno_(lineno) { advance(); }

    const Token& peek() const { return tok_; }

    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

    [[noreturn]] void fail(const std::string& msg, int col) const {
        std::ostringstream os;
        os << "parse error at " << lineno_ << ":" << col << ": " << msg;
        throw ValidationError(os.str());
    }

private:
    void advance() {
        while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_]))) ++pos_;
        int col = int(pos_) + 1;
        if (pos_ >= line_.size() || line_[pos_] == '#') {
            tok_ = {Token::End, "", col};
            return;
        }
        char ch = line_[pos_];
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            size_t start = pos_;
            while (pos_ < line_.size() &&
                   (std::isalnum(static_cast<unsigned char>(line_[pos_])) || line_[pos_] == '_'))
                ++pos_;
            tok_ = {Token::Ident, line_.substr(start, pos_ - start), col};
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            size_t start = pos_;
            while (pos_ < line_.size() && std::isdigit(static_cast<unsigned char>(line_[pos_]))) ++pos_;
            tok_ = {Token::Number, line_.substr(start, pos_ - start), col};
            return;
        }
        ++pos_;
        switch (ch) {
        case '*': tok_ = {Token::Star, "*", col}; return;
        case '/': tok_ = {Token::Slash, "/", col}; return;
        case '+': tok_ = {Token::Plus, "+", col}; return;
        case '-': tok_ = {Token::Minus, "-", col}; return;
        default: fail(std::string("unexpected character '") + ch + "'", col);
        }
    }

    const std::string& line_;
    int lineno_;
    size_t pos_ = 0;
    Token tok_{Token::End, "", 1};
};

Scalar parse_coefficient(LineLexer& lex, const Field& F) {
    Token num = lex.next();
    std::string text = num.text;
    if (lex.peek().kind == Token::Slash) {
        lex.next();
        if (lex.peek().kind != Token::Number) lex.fail("expected denominator after '/'", lex.peek().col);
        text += "/" + lex.next().text;
    }
    try {
        return F.parse(text);
    } catch (const ValidationError& e) {
        lex.fail(e.what(), num.col);
    }
}

Path parse_path(LineLexer& lex, const Quiver& q) {
    Path p;
    for (;;) {
        if (lex.peek().kind != Token::Ident) lex.fail("expected arrow name", lex.peek().col);
        Token t = lex.next();
        auto it = q.arrow_index.find(t.text);
        if (it == q.arrow_index.end()) lex.fail("unknown arrow '" + t.text + "'", t.col);
        int a = it->second;
        if (p.arrows.empty()) {
            p.source = q.src(a);
        } else if (q.tgt(p.arrows.back()) != q.src(a)) {
            lex.fail("arrow '" + t.text + "' does not compose: previous arrow ends at " +
                         q.vname(q.tgt(p.arrows.back())) + ", this one starts at " + q.vname(q.src(a)),
                     t.col);
        }
        p.arrows.push_back(a);
        if (lex.peek().kind == Token::Star) {
            lex.next();
            continue;
        }
        return p;
    }
}

} // namespace

std::vector<PathExpr> parse_relations(const std::string& text, const Quiver& q, const Field& F) {
    std::vector<PathExpr> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        LineLexer lex(line, lineno);
        if (lex.peek().kind == Token::End) continue;

        PathExpr expr;
        int src = -1, tgt = -1;
        bool first = true;
        for (;;) {
            Scalar sign = F.one();
            if (lex.peek().kind == Token::Plus || lex.peek().kind == Token::Minus) {
                if (lex.next().kind == Token::Minus) sign = F.neg(sign);
            } else if (!first) {
                lex.fail("expected '+' or '-' between terms", lex.peek().col);
            }
            Scalar coeff = F.one();
            if (lex.peek().kind == Token::Number) {
                coeff = parse_coefficient(lex, F);
                if (lex.peek().kind == Token::Star) lex.next();
            }
            Token at = lex.peek();
            Path p = parse_path(lex, q);
            if (src < 0) {
                src = p.source;
                tgt = p.target(q);
            } else if (p.source != src || p.target(q) != tgt) {
                lex.fail("term is not parallel to the first term of the relation", at.col);
            }
            expr.add(q, F, p, F.mul(sign, coeff));
            first = false;
            if (lex.peek().kind == Token::End) break;
        }
        out.push_back(std::move(expr));
    }
    return out;
}

std::string serialize_relations(const Quiver& q, const Field& F, const std::vector<PathExpr>& relations) {
    std::string out;
    for (const auto& rel : relations) {
        out += path_expr_to_string(q, F, rel);
        out += "\n";
    }
    return out;
}

} // namespace qgt
