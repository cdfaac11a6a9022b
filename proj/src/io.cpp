#include "mtskit/io.hpp"

#include "mtskit/errors.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace mtskit {

namespace {

// ---------------------------------------------------------------- system files

struct RawLine {
    int number = 0;
    std::vector<std::string> tokens;
};

std::vector<RawLine> tokenize_lines(std::string_view text) {
    std::vector<RawLine> lines;
    int number = 0;
    size_t start = 0;
    while (start <= text.size()) {
        size_t end = text.find('\n', start);
        std::string_view line =
            text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
        ++number;
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        RawLine raw;
        raw.number = number;
        std::istringstream words{std::string(line)};
        std::string word;
        while (words >> word)
            raw.tokens.push_back(word);
        if (!raw.tokens.empty())
            lines.push_back(std::move(raw));
        if (end == std::string_view::npos)
            break;
        start = end + 1;
    }
    return lines;
}

} // namespace

SystemData parse_system_data(std::string_view text) {
    auto lines = tokenize_lines(text);
    if (lines.empty())
        throw ParseError(1, 1, "empty system description");
    size_t at = 0;
    auto &head = lines[at];
    if (head.tokens.size() != 2 || head.tokens[0] != "mts" ||
        (head.tokens[1] != "modal" && head.tokens[1] != "mixed"))
        throw ParseError(head.number, 1, "expected 'mts modal' or 'mts mixed'");
    SystemData data;
    data.kind = head.tokens[1] == "modal" ? SystemKind::modal : SystemKind::mixed;
    ++at;

    if (at >= lines.size() || lines[at].tokens[0] != "alphabet:")
        throw ParseError(at < lines.size() ? lines[at].number : head.number + 1, 1,
                         "expected 'alphabet: e1 e2 ...'");
    if (lines[at].tokens.size() < 2)
        throw ParseError(lines[at].number, 1, "alphabet must declare at least one event");
    data.alphabet.assign(lines[at].tokens.begin() + 1, lines[at].tokens.end());
    for (const auto &event : data.alphabet)
        if (!EventAlphabet::valid_event_name(event))
            throw ParseError(lines[at].number, 1, "invalid event name '" + event + "'");
    ++at;

    if (at >= lines.size() || lines[at].tokens[0] != "init:" || lines[at].tokens.size() != 2)
        throw ParseError(at < lines.size() ? lines[at].number : head.number + 2, 1,
                         "expected 'init: state'");
    data.init = lines[at].tokens[1];
    ++at;

    const bool modal = data.kind == SystemKind::modal;
    std::set<std::string> events(data.alphabet.begin(), data.alphabet.end());
    for (; at < lines.size(); ++at) {
        const auto &line = lines[at];
        const std::string &mode = line.tokens[0];
        bool known_mode = modal ? (mode == "must" || mode == "may") : (mode == "a" || mode == "c");
        if (!known_mode)
            throw ParseError(line.number, 1,
                             modal ? "expected 'must' or 'may' transition"
                                   : "expected 'a' or 'c' transition");
        if (line.tokens.size() != 4)
            throw ParseError(line.number, 1, "expected '" + mode + " src event dst'");
        if (!events.count(line.tokens[2]))
            throw ParseError(line.number, 1, "unknown event '" + line.tokens[2] + "'");
        data.transitions.push_back({mode, line.tokens[1], line.tokens[2], line.tokens[3]});
    }
    return data;
}

PointedSystem parse_system(std::string_view text) {
    SystemData data = parse_system_data(text);
    MixedSystem system = MixedSystem::from_data(data);
    return pointed(std::move(system), data.init);
}

std::string print_system(const PointedSystem &p) {
    const MixedSystem &sys = p.system;
    const bool modal = sys.declared_kind() == SystemKind::modal && sys.is_modal();
    std::string out = modal ? "mts modal\n" : "mts mixed\n";
    out += "alphabet:";
    for (const auto &event : sys.alphabet().names())
        out += " " + event;
    out += "\ninit: " + sys.state_name(p.init) + "\n";
    auto emit = [&](const char *mode, const Transition &t) {
        out += std::string(mode) + " " + sys.state_name(t.src) + " " +
               sys.alphabet().name(t.event) + " " + sys.state_name(t.dst) + "\n";
    };
    if (modal) {
        for (const Transition &t : sys.r_c())
            emit(sys.has_a(t.src, t.event, t.dst) ? "must" : "may", t);
    } else {
        for (const Transition &t : sys.r_a())
            emit("a", t);
        for (const Transition &t : sys.r_c())
            emit("c", t);
    }
    return out;
}

// ----------------------------------------------------------------- expressions

namespace {

struct Token {
    enum class Kind { ident, number, punct, end };
    Kind kind = Kind::end;
    std::string text;
    int line = 1;
    int column = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) { advance(); }

    const Token &peek() const { return current_; }

    Token take() {
        Token token = current_;
        advance();
        return token;
    }

    [[noreturn]] void fail(const std::string &message) const {
        throw ParseError(current_.line, current_.column, message);
    }

    void expect_punct(const std::string &punct) {
        if (current_.kind != Token::Kind::punct || current_.text != punct)
            fail("expected '" + punct + "'");
        advance();
    }

    bool accept_punct(const std::string &punct) {
        if (current_.kind == Token::Kind::punct && current_.text == punct) {
            advance();
            return true;
        }
        return false;
    }

    void expect_end() {
        if (current_.kind != Token::Kind::end)
            fail("unexpected trailing input");
    }

private:
    void advance() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            consume();
        current_.line = line_;
        current_.column = column_;
        if (pos_ >= text_.size()) {
            current_.kind = Token::Kind::end;
            current_.text.clear();
            return;
        }
        char c = text_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string word;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                word += text_[pos_];
                consume();
            }
            current_.kind = Token::Kind::ident;
            current_.text = std::move(word);
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                digits += text_[pos_];
                consume();
            }
            current_.kind = Token::Kind::number;
            current_.text = std::move(digits);
            return;
        }
        current_.kind = Token::Kind::punct;
        current_.text = std::string(1, c);
        consume();
    }

    void consume() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    std::string_view text_;
    size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
    Token current_;
};

// --------------------------------------------------------------- HML formulas

class FormulaParser {
public:
    FormulaParser(Lexer &lexer, FormulaArena &arena) : lex_(lexer), arena_(arena) {}

    FormulaRef parse() {
        FormulaRef f = disjunction();
        lex_.expect_end();
        return f;
    }

private:
    FormulaRef disjunction() {
        FormulaRef acc = conjunction();
        while (lex_.accept_punct("|"))
            acc = arena_.disjunction(acc, conjunction());
        return acc;
    }

    FormulaRef conjunction() {
        FormulaRef acc = unary();
        while (lex_.accept_punct("&"))
            acc = arena_.conjunction(acc, unary());
        return acc;
    }

    FormulaRef unary() {
        if (lex_.accept_punct("!"))
            return arena_.negation(unary());
        if (lex_.accept_punct("<")) {
            std::string event = event_name();
            lex_.expect_punct(">");
            return arena_.diamond(event, unary());
        }
        if (lex_.accept_punct("[")) {
            std::string event = event_name();
            lex_.expect_punct("]");
            return arena_.box(event, unary());
        }
        return atom();
    }

    FormulaRef atom() {
        const Token &token = lex_.peek();
        if (token.kind == Token::Kind::ident) {
            if (token.text == "tt") {
                lex_.take();
                return arena_.tt();
            }
            if (token.text == "ff") {
                lex_.take();
                return arena_.ff();
            }
            lex_.fail("expected 'tt', 'ff', a modality or a parenthesized formula");
        }
        if (lex_.accept_punct("(")) {
            FormulaRef f = disjunction();
            lex_.expect_punct(")");
            return f;
        }
        lex_.fail("expected a formula");
    }

    std::string event_name() {
        const Token &token = lex_.peek();
        if (token.kind != Token::Kind::ident)
            lex_.fail("expected an event name");
        return lex_.take().text;
    }

    Lexer &lex_;
    FormulaArena &arena_;
};

// Sugar recovered during printing: ff, [e]F and F | G are negation patterns.
enum class FormulaSugar { plain, ff, box, disjunction };

FormulaSugar classify(FormulaRef f) {
    if (f->kind() != FormulaKind::negation)
        return FormulaSugar::plain;
    FormulaRef inner = f->left();
    if (inner->kind() == FormulaKind::tt)
        return FormulaSugar::ff;
    if (inner->kind() == FormulaKind::diamond && inner->left()->kind() == FormulaKind::negation)
        return FormulaSugar::box;
    if (inner->kind() == FormulaKind::conjunction &&
        inner->left()->kind() == FormulaKind::negation &&
        inner->right()->kind() == FormulaKind::negation)
        return FormulaSugar::disjunction;
    return FormulaSugar::plain;
}

int formula_precedence(FormulaRef f) {
    switch (f->kind()) {
    case FormulaKind::tt:
        return 4;
    case FormulaKind::negation:
        switch (classify(f)) {
        case FormulaSugar::ff:
            return 4;
        case FormulaSugar::disjunction:
            return 1;
        default:
            return 3;
        }
    case FormulaKind::diamond:
        return 3;
    case FormulaKind::conjunction:
        return 2;
    }
    return 4;
}

void print_formula_into(FormulaRef f, std::string &out);

void print_operand(FormulaRef f, int min_precedence, bool parenthesize_equal, std::string &out) {
    int prec = formula_precedence(f);
    bool parens = prec < min_precedence || (parenthesize_equal && prec == min_precedence);
    if (parens)
        out += "(";
    print_formula_into(f, out);
    if (parens)
        out += ")";
}

void print_formula_into(FormulaRef f, std::string &out) {
    switch (f->kind()) {
    case FormulaKind::tt:
        out += "tt";
        return;
    case FormulaKind::diamond:
        out += "<" + f->event() + ">";
        print_operand(f->left(), 3, false, out);
        return;
    case FormulaKind::conjunction:
        print_operand(f->left(), 2, false, out);
        out += " & ";
        print_operand(f->right(), 2, true, out);
        return;
    case FormulaKind::negation:
        switch (classify(f)) {
        case FormulaSugar::ff:
            out += "ff";
            return;
        case FormulaSugar::box:
            out += "[" + f->left()->event() + "]";
            print_operand(f->left()->left()->left(), 3, false, out);
            return;
        case FormulaSugar::disjunction:
            print_operand(f->left()->left()->left(), 1, false, out);
            out += " | ";
            print_operand(f->left()->right()->left(), 1, true, out);
            return;
        case FormulaSugar::plain:
            out += "!";
            print_operand(f->left(), 3, false, out);
            return;
        }
    }
}

// ----------------------------------------------------------------- MPA terms

class TermParser {
public:
    TermParser(Lexer &lexer, TermArena &arena) : lex_(lexer), arena_(arena) {}

    TermRef parse() {
        TermRef t = sum();
        lex_.expect_end();
        return t;
    }

private:
    TermRef sum() {
        const Token at = lex_.peek();
        TermRef acc = prefix();
        while (lex_.accept_punct("+")) {
            const Token right_at = lex_.peek();
            TermRef right = prefix();
            check_summand(acc, at);
            check_summand(right, right_at);
            acc = arena_.sum(acc, right);
        }
        return acc;
    }

    void check_summand(TermRef t, const Token &at) {
        if (t->kind() == TermKind::nil || t->kind() == TermKind::bot)
            throw ParseError(at.line, at.column, "no summand of a sum may be 0 or bot");
    }

    TermRef prefix() {
        const Token &token = lex_.peek();
        if (token.kind == Token::Kind::ident && token.text != "bot") {
            std::string event = lex_.take().text;
            bool must;
            if (lex_.accept_punct("!"))
                must = true;
            else if (lex_.accept_punct("?"))
                must = false;
            else
                lex_.fail("expected '!' or '?' after event '" + event + "'");
            lex_.expect_punct(".");
            TermRef body = prefix();
            return must ? arena_.must_prefix(event, body) : arena_.may_prefix(event, body);
        }
        return atom();
    }

    TermRef atom() {
        const Token &token = lex_.peek();
        if (token.kind == Token::Kind::number && token.text == "0") {
            lex_.take();
            return arena_.nil();
        }
        if (token.kind == Token::Kind::ident && token.text == "bot") {
            lex_.take();
            return arena_.bot();
        }
        if (lex_.accept_punct("(")) {
            TermRef t = sum();
            lex_.expect_punct(")");
            return t;
        }
        lex_.fail("expected '0', 'bot', a prefix or a parenthesized term");
    }

    Lexer &lex_;
    TermArena &arena_;
};

void print_term_into(TermRef t, std::string &out) {
    switch (t->kind()) {
    case TermKind::nil:
        out += "0";
        return;
    case TermKind::bot:
        out += "bot";
        return;
    case TermKind::must_prefix:
    case TermKind::may_prefix: {
        out += t->event();
        out += t->kind() == TermKind::must_prefix ? "!." : "?.";
        const bool parens = t->left()->kind() == TermKind::sum;
        if (parens)
            out += "(";
        print_term_into(t->left(), out);
        if (parens)
            out += ")";
        return;
    }
    case TermKind::sum: {
        print_term_into(t->left(), out); // left-assoc: flat on the left
        out += " + ";
        const bool parens = t->right()->kind() == TermKind::sum;
        if (parens)
            out += "(";
        print_term_into(t->right(), out);
        if (parens)
            out += ")";
        return;
    }
    }
}

// ----------------------------------------------------------------- nu-formulas

class NuParser {
public:
    explicit NuParser(Lexer &lexer) : lex_(lexer) {}

    NuRef parse() {
        NuRef f = expression();
        lex_.expect_end();
        return f;
    }

private:
    // nu binds weakest and extends as far right as possible
    NuRef expression() {
        const Token &token = lex_.peek();
        if (token.kind == Token::Kind::ident && token.text == "nu")
            return binder();
        return disjunction();
    }

    NuRef binder() {
        lex_.take(); // nu
        int var = variable_name();
        if (bound_.count(var))
            lex_.fail("variable X" + std::to_string(var) + " bound twice");
        bound_.insert(var);
        in_scope_.insert(var);
        lex_.expect_punct(".");
        NuRef body = expression();
        in_scope_.erase(var);
        return nu_bind(var, body);
    }

    NuRef disjunction() {
        std::vector<NuRef> parts{conjunction()};
        while (lex_.accept_punct("|"))
            parts.push_back(conjunction());
        return parts.size() == 1 ? parts[0] : nu_or(std::move(parts));
    }

    NuRef conjunction() {
        std::vector<NuRef> parts{unary()};
        while (lex_.accept_punct("&"))
            parts.push_back(unary());
        return parts.size() == 1 ? parts[0] : nu_and(std::move(parts));
    }

    NuRef unary() {
        if (lex_.peek().kind == Token::Kind::punct && lex_.peek().text == "!")
            lex_.fail("negation is not part of the greatest-fixed-point fragment");
        if (lex_.accept_punct("<")) {
            std::string event = event_name();
            lex_.expect_punct(">");
            return nu_diamond(event, unary());
        }
        if (lex_.accept_punct("[")) {
            std::string event = event_name();
            lex_.expect_punct("]");
            return nu_box(event, unary());
        }
        return atom();
    }

    NuRef atom() {
        const Token &token = lex_.peek();
        if (token.kind == Token::Kind::ident) {
            if (token.text == "tt") {
                lex_.take();
                return nu_tt();
            }
            if (token.text == "ff") {
                lex_.take();
                return nu_ff();
            }
            if (is_variable(token.text)) {
                int var = std::stoi(std::string(token.text).substr(1));
                if (!in_scope_.count(var))
                    lex_.fail("variable X" + std::to_string(var) + " is not in scope");
                lex_.take();
                return nu_var(var);
            }
            lex_.fail("expected 'tt', 'ff', a variable, a modality or 'nu'");
        }
        if (lex_.accept_punct("(")) {
            NuRef f = expression();
            lex_.expect_punct(")");
            return f;
        }
        lex_.fail("expected a formula");
    }

    static bool is_variable(const std::string &name) {
        if (name.size() < 2 || name[0] != 'X')
            return false;
        return std::all_of(name.begin() + 1, name.end(),
                           [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    }

    int variable_name() {
        const Token &token = lex_.peek();
        if (token.kind != Token::Kind::ident || !is_variable(token.text))
            lex_.fail("expected a variable X1, X2, ...");
        return std::stoi(lex_.take().text.substr(1));
    }

    std::string event_name() {
        const Token &token = lex_.peek();
        if (token.kind != Token::Kind::ident)
            lex_.fail("expected an event name");
        return lex_.take().text;
    }

    Lexer &lex_;
    std::set<int> bound_;
    std::set<int> in_scope_;
};

int nu_precedence(const NuRef &f) {
    switch (f->kind) {
    case NuKind::tt:
    case NuKind::ff:
    case NuKind::variable:
        return 4;
    case NuKind::diamond:
    case NuKind::box:
        return 3;
    case NuKind::conjunction:
        return 2;
    case NuKind::disjunction:
        return 1;
    case NuKind::nu:
        return 0;
    }
    return 4;
}

void print_nu_into(const NuRef &f, std::string &out);

void print_nu_operand(const NuRef &f, int min_precedence, bool parenthesize_equal,
                      std::string &out) {
    int prec = nu_precedence(f);
    bool parens = prec < min_precedence || (parenthesize_equal && prec == min_precedence);
    if (parens)
        out += "(";
    print_nu_into(f, out);
    if (parens)
        out += ")";
}

void print_nu_into(const NuRef &f, std::string &out) {
    switch (f->kind) {
    case NuKind::tt:
        out += "tt";
        return;
    case NuKind::ff:
        out += "ff";
        return;
    case NuKind::variable:
        out += "X" + std::to_string(f->var);
        return;
    case NuKind::diamond:
    case NuKind::box:
        out += f->kind == NuKind::diamond ? "<" + f->event + ">" : "[" + f->event + "]";
        print_nu_operand(f->children[0], 3, false, out);
        return;
    case NuKind::conjunction:
    case NuKind::disjunction: {
        const int prec = f->kind == NuKind::conjunction ? 2 : 1;
        const char *sep = f->kind == NuKind::conjunction ? " & " : " | ";
        for (size_t i = 0; i < f->children.size(); ++i) {
            if (i)
                out += sep;
            // junction children of equal precedence keep their parentheses so
            // nesting survives the round trip
            print_nu_operand(f->children[i], prec, true, out);
        }
        return;
    }
    case NuKind::nu:
        out += "nu X" + std::to_string(f->var) + " . ";
        print_nu_into(f->children[0], out);
        return;
    }
}

} // namespace

FormulaRef parse_formula(std::string_view text, FormulaArena &arena) {
    Lexer lexer(text);
    FormulaParser parser(lexer, arena);
    return parser.parse();
}

std::string print_formula(FormulaRef formula) {
    std::string out;
    print_formula_into(formula, out);
    return out;
}

TermRef parse_term(std::string_view text, TermArena &arena) {
    Lexer lexer(text);
    TermParser parser(lexer, arena);
    return parser.parse();
}

std::string print_term(TermRef term) {
    std::string out;
    print_term_into(term, out);
    return out;
}

NuRef parse_nu_formula(std::string_view text) {
    Lexer lexer(text);
    NuParser parser(lexer);
    return parser.parse();
}

std::string print_nu_formula(const NuRef &formula) {
    std::string out;
    print_nu_into(formula, out);
    return out;
}

} // namespace mtskit
