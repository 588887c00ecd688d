#include "qhardy/cfl/parser.hpp"

#include <cctype>
#include <cstdlib>
#include <optional>
#include <vector>

namespace qhardy::cfl {

namespace {

struct Token {
    enum class Kind { Word, Number, Amp, Arrow, BoxArrow, LParen, RParen, Colon, Equals, Comma, End };
    Kind kind;
    std::string text;
    int line;
    int column;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_space_and_comments();
            int line = line_, col = column_;
            if (pos_ >= text_.size()) {
                out.push_back({Token::Kind::End, "", line, col});
                return out;
            }
            char ch = text_[pos_];
            if (ch == '&') {
                advance();
                out.push_back({Token::Kind::Amp, "&", line, col});
            } else if (ch == '(') {
                advance();
                out.push_back({Token::Kind::LParen, "(", line, col});
            } else if (ch == ')') {
                advance();
                out.push_back({Token::Kind::RParen, ")", line, col});
            } else if (ch == ':') {
                advance();
                out.push_back({Token::Kind::Colon, ":", line, col});
            } else if (ch == ',') {
                advance();
                out.push_back({Token::Kind::Comma, ",", line, col});
            } else if (ch == '=') {
                if (peek(1) == '>') {
                    advance();
                    advance();
                    out.push_back({Token::Kind::Arrow, "=>", line, col});
                } else {
                    advance();
                    out.push_back({Token::Kind::Equals, "=", line, col});
                }
            } else if (ch == '[') {
                if (peek(1) == ']' && peek(2) == '-' && peek(3) == '>') {
                    for (int i = 0; i < 4; ++i) advance();
                    out.push_back({Token::Kind::BoxArrow, "[]->", line, col});
                } else {
                    throw ParseError(line, col, "expected \"[]->\"");
                }
            } else if (std::isalpha(static_cast<unsigned char>(ch))) {
                std::string word;
                while (pos_ < text_.size() &&
                       std::isalnum(static_cast<unsigned char>(text_[pos_]))) {
                    word += text_[pos_];
                    advance();
                }
                out.push_back({Token::Kind::Word, word, line, col});
            } else if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '-' || ch == '+' ||
                       ch == '.') {
                std::string num;
                while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
                                               std::string("+-.eE").find(text_[pos_]) !=
                                                   std::string::npos)) {
                    num += text_[pos_];
                    advance();
                }
                out.push_back({Token::Kind::Number, num, line, col});
            } else {
                throw ParseError(line, col, std::string("unexpected character '") + ch + "'");
            }
        }
    }

private:
    char peek(std::size_t ahead) const {
        return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
    }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    void skip_space_and_comments() {
        while (pos_ < text_.size()) {
            char ch = text_[pos_];
            if (ch == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(ch))) {
                advance();
            } else {
                return;
            }
        }
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

std::optional<SettingLabel> setting_from_word(const std::string& w) {
    for (SettingLabel s : kAllSettings)
        if (w == to_string(s)) return s;
    return std::nullopt;
}

std::optional<OutcomeLabel> outcome_from_word(const std::string& w) {
    for (OutcomeLabel o : kAllOutcomeLabels)
        if (w == to_string(o)) return o;
    return std::nullopt;
}

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    const Token& peek() const { return tokens_[pos_]; }
    const Token& take() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
    bool at_end() const { return peek().kind == Token::Kind::End; }

    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError(peek().line, peek().column, message);
    }

    void expect(Token::Kind kind, const std::string& what) {
        if (peek().kind != kind) fail("expected " + what);
        take();
    }

    // impl := conj ["=>" impl]
    FormulaPtr parse_impl() {
        FormulaPtr left = parse_conj();
        if (peek().kind == Token::Kind::Arrow) {
            take();
            return make_implies(std::move(left), parse_impl());
        }
        return left;
    }

    // conj := unit {"&" unit}
    FormulaPtr parse_conj() {
        FormulaPtr acc = parse_unit();
        while (peek().kind == Token::Kind::Amp) {
            take();
            acc = make_and(std::move(acc), parse_unit());
        }
        return acc;
    }

    // unit := SETTING | OUTCOME | SETTING "[]->" unit | "(" formula ")"
    FormulaPtr parse_unit() {
        const Token& tok = peek();
        if (tok.kind == Token::Kind::LParen) {
            take();
            FormulaPtr inner = parse_impl();
            expect(Token::Kind::RParen, "\")\"");
            return inner;
        }
        if (tok.kind != Token::Kind::Word) fail("expected a setting, an outcome letter or \"(\"");
        if (auto setting = setting_from_word(tok.text)) {
            take();
            if (peek().kind == Token::Kind::BoxArrow) {
                take();
                return make_box(*setting, parse_unit());
            }
            return make_setting(*setting);
        }
        if (auto outcome = outcome_from_word(tok.text)) {
            take();
            return make_outcome(*outcome);
        }
        fail("unknown symbol \"" + tok.text + "\"");
    }

    int parse_int(const std::string& what) {
        if (peek().kind != Token::Kind::Number) fail("expected " + what);
        const Token tok = take();
        char* end = nullptr;
        long value = std::strtol(tok.text.c_str(), &end, 10);
        if (end == nullptr || *end != '\0')
            throw ParseError(tok.line, tok.column, "malformed integer \"" + tok.text + "\"");
        return static_cast<int>(value);
    }

    double parse_double(const std::string& what) {
        if (peek().kind != Token::Kind::Number) fail("expected " + what);
        const Token tok = take();
        char* end = nullptr;
        double value = std::strtod(tok.text.c_str(), &end);
        if (end == nullptr || *end != '\0')
            throw ParseError(tok.line, tok.column, "malformed number \"" + tok.text + "\"");
        return value;
    }

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

RuleKind rule_from_word(const Token& tok) {
    for (RuleKind r : {RuleKind::Premise, RuleKind::QM, RuleKind::Loc1, RuleKind::Loc2,
                       RuleKind::Logic})
        if (tok.text == to_string(r)) return r;
    throw ParseError(tok.line, tok.column, "unknown rule \"" + tok.text + "\"");
}

std::string peek_word(const Parser& p) {
    return p.peek().kind == Token::Kind::Word ? p.peek().text : std::string();
}

}  // namespace

FormulaPtr parse_formula(const std::string& text) {
    Parser parser(Lexer(text).run());
    FormulaPtr f = parser.parse_impl();
    if (!parser.at_end()) parser.fail("trailing input after formula");
    return f;
}

Derivation parse_derivation(const std::string& text) {
    Parser parser(Lexer(text).run());

    // Header: theta = <number>
    if (peek_word(parser) != "theta") parser.fail("expected header \"theta = <radians>\"");
    parser.take();
    parser.expect(Token::Kind::Equals, "\"=\"");
    double theta_value = parser.parse_double("a theta value");

    std::vector<Step> steps;
    while (!parser.at_end()) {
        if (peek_word(parser) != "step") parser.fail("expected \"step\"");
        const Token step_tok = parser.take();
        int index = parser.parse_int("a step index");
        if (index != static_cast<int>(steps.size()) + 1)
            throw ParseError(step_tok.line, step_tok.column,
                             "step indices must run consecutively from 1; expected " +
                                 std::to_string(steps.size() + 1) + ", got " +
                                 std::to_string(index));
        parser.expect(Token::Kind::Colon, "\":\"");
        FormulaPtr formula = parser.parse_impl();
        if (peek_word(parser) != "by") parser.fail("expected \"by\"");
        parser.take();
        if (parser.peek().kind != Token::Kind::Word) parser.fail("expected a rule name");
        RuleKind rule = rule_from_word(parser.take());

        std::vector<int> refs;
        if (parser.peek().kind == Token::Kind::LParen) {
            parser.take();
            refs.push_back(parser.parse_int("a step reference"));
            while (parser.peek().kind == Token::Kind::Comma) {
                parser.take();
                refs.push_back(parser.parse_int("a step reference"));
            }
            parser.expect(Token::Kind::RParen, "\")\"");
        }
        for (int ref : refs)
            if (ref < 1 || ref >= index)
                throw IndexError("step " + std::to_string(index) + " references step " +
                                 std::to_string(ref) + "; references must be strictly earlier");
        steps.push_back(Step{index, std::move(formula), rule, std::move(refs)});
    }
    if (steps.empty()) throw ParseError(1, 1, "derivation has no steps");
    return Derivation{Theta(theta_value), std::move(steps)};
}

}  // namespace qhardy::cfl
