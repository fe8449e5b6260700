#include "crn/parser.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace crn {

namespace {

std::string describe(const std::string& kind, int line, int col, const std::string& message) {
    std::ostringstream os;
    os << kind << " at line " << line << ", column " << col << ": " << message;
    return os.str();
}

struct Cursor {
    std::string_view text;
    size_t pos = 0;
    int line;

    int col() const { return static_cast<int>(pos) + 1; }
    bool done() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }

    void skip_ws() {
        while (!done() && (peek() == ' ' || peek() == '\t')) ++pos;
    }
    bool accept(char c) {
        if (!done() && peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    bool accept(std::string_view s) {
        if (text.substr(pos, s.size()) == s) {
            pos += s.size();
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError("SyntaxError", line, col(), message);
    }
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::string read_identifier(Cursor& cur) {
    cur.skip_ws();
    if (cur.done() || !ident_start(cur.peek())) cur.fail("expected identifier");
    size_t start = cur.pos;
    while (!cur.done() && ident_char(cur.peek())) ++cur.pos;
    return std::string(cur.text.substr(start, cur.pos - start));
}

struct Builder {
    std::vector<std::string> species;
    std::vector<IVec> complexes;
    std::vector<Reaction> reactions;
    std::map<std::string, Rational> rates;
    std::map<std::string, int> binding_line;
    std::map<std::string, int> species_index;
    std::set<std::string> labels;

    int species_id(const std::string& name) {
        auto it = species_index.find(name);
        if (it != species_index.end()) return it->second;
        int id = static_cast<int>(species.size());
        species.push_back(name);
        species_index.emplace(name, id);
        for (auto& c : complexes) {
            IVec grown = IVec::Zero(id + 1);
            grown.head(c.size()) = c;
            c = grown;
        }
        return id;
    }

    int complex_id(const std::map<int, int>& terms) {
        IVec v = IVec::Zero(static_cast<Index>(species.size()));
        for (const auto& [sp, coeff] : terms) v(sp) = coeff;
        for (size_t j = 0; j < complexes.size(); ++j)
            if (complexes[j] == v) return static_cast<int>(j);
        complexes.push_back(v);
        return static_cast<int>(complexes.size()) - 1;
    }
};

// complex := '0' | term ('+' term)*
int parse_complex(Cursor& cur, Builder& b) {
    std::map<int, int> terms;
    bool first_term = true;
    while (true) {
        cur.skip_ws();
        long long coeff = 1;
        int coeff_col = cur.col();
        bool has_coeff = false;
        bool negative = false;
        if (!cur.done() && cur.peek() == '-' && cur.pos + 1 < cur.text.size() &&
            std::isdigit(static_cast<unsigned char>(cur.text[cur.pos + 1]))) {
            negative = true;
            ++cur.pos;
        }
        if (!cur.done() && std::isdigit(static_cast<unsigned char>(cur.peek()))) {
            has_coeff = true;
            coeff = 0;
            while (!cur.done() && std::isdigit(static_cast<unsigned char>(cur.peek()))) {
                coeff = coeff * 10 + (cur.peek() - '0');
                ++cur.pos;
            }
        }
        cur.skip_ws();
        const bool species_follows = !cur.done() && ident_start(cur.peek());
        if (has_coeff && !species_follows) {
            // A bare integer is the zero complex; anything else is malformed.
            if (coeff == 0 && !negative && first_term) return b.complex_id(terms);
            cur.fail("expected species after coefficient");
        }
        if (has_coeff && (negative || coeff <= 0))
            throw ParseError("UnboundCoefficient", cur.line, coeff_col,
                             "stoichiometric coefficient must be a positive integer");
        std::string name = read_identifier(cur);
        terms[b.species_id(name)] += static_cast<int>(coeff);
        first_term = false;
        cur.skip_ws();
        if (!cur.accept('+')) break;
    }
    return b.complex_id(terms);
}

void add_reaction(Cursor& cur, Builder& b, int reactant, int product, const std::string& label) {
    if (reactant == product)
        throw ParseError("SelfLoop", cur.line, 1, "reaction must connect distinct complexes");
    for (const auto& r : b.reactions)
        if (r.reactant == reactant && r.product == product)
            throw ParseError("DuplicateReaction", cur.line, 1,
                             "reaction between these complexes already declared");
    if (!b.labels.insert(label).second)
        throw ParseError("SyntaxError", cur.line, 1, "rate label reused: " + label);
    b.reactions.push_back({reactant, product, label});
}

Rational parse_rational_token(Cursor& cur) {
    cur.skip_ws();
    size_t start = cur.pos;
    while (!cur.done() && (std::isdigit(static_cast<unsigned char>(cur.peek())) ||
                           cur.peek() == '/' || cur.peek() == '.' || cur.peek() == '-' ||
                           cur.peek() == '+'))
        ++cur.pos;
    std::string_view token = cur.text.substr(start, cur.pos - start);
    if (token.empty()) cur.fail("expected rational value");
    Rational value;
    try {
        value = Rational::from_string(token);
    } catch (const std::exception&) {
        throw ParseError("SyntaxError", cur.line, static_cast<int>(start) + 1,
                         "not a rational value: '" + std::string(token) + "'");
    }
    if (value < Rational(0))
        throw ParseError("SyntaxError", cur.line, static_cast<int>(start) + 1,
                         "rate values must be non-negative");
    return value;
}

}  // namespace

ParseError::ParseError(std::string kind_, int line_, int col_, const std::string& message)
    : std::runtime_error(describe(kind_, line_, col_, message)),
      kind(std::move(kind_)),
      line(line_),
      col(col_) {}

ReactionNetwork parse(std::string_view text, const std::string& name) {
    Builder b;
    int line_no = 0;
    size_t offset = 0;
    while (offset <= text.size()) {
        size_t end = text.find('\n', offset);
        std::string_view raw =
            text.substr(offset, end == std::string_view::npos ? std::string_view::npos
                                                              : end - offset);
        offset = end == std::string_view::npos ? text.size() + 1 : end + 1;
        ++line_no;

        std::string_view content = raw.substr(0, raw.find('#'));
        Cursor cur{content, 0, line_no};
        cur.skip_ws();
        if (cur.done()) continue;

        // Lookahead decides between a species declaration, a binding and a
        // reaction statement.
        size_t save = cur.pos;
        bool is_binding = false;
        bool is_declaration = false;
        if (ident_start(cur.peek())) {
            const std::string head = read_identifier(cur);
            cur.skip_ws();
            is_binding = !cur.done() && cur.peek() == '=';
            is_declaration = head == "species" && !cur.done() && ident_start(cur.peek());
        }
        cur.pos = save;

        if (is_declaration) {
            read_identifier(cur);  // the keyword
            while (true) {
                b.species_id(read_identifier(cur));
                cur.skip_ws();
                if (!cur.accept(',')) break;
            }
            cur.skip_ws();
            if (!cur.done()) cur.fail("unexpected trailing input");
            continue;
        }

        if (is_binding) {
            std::string label = read_identifier(cur);
            cur.skip_ws();
            cur.accept('=');
            Rational value = parse_rational_token(cur);
            cur.skip_ws();
            if (!cur.done()) cur.fail("unexpected trailing input");
            if (b.binding_line.count(label))
                cur.fail("rate label bound twice: " + label);
            b.binding_line.emplace(label, line_no);
            b.rates.emplace(label, value);
            continue;
        }

        int reactant = parse_complex(cur, b);
        cur.skip_ws();
        bool reversible;
        if (cur.accept("<->"))
            reversible = true;
        else if (cur.accept("->"))
            reversible = false;
        else
            cur.fail("expected '->' or '<->'");
        int product = parse_complex(cur, b);
        cur.skip_ws();
        if (!cur.accept(';')) cur.fail("expected ';' before rate labels");
        std::string forward = read_identifier(cur);
        cur.skip_ws();
        if (reversible) {
            if (!cur.accept(',')) cur.fail("reversible statement needs two labels");
            std::string backward = read_identifier(cur);
            cur.skip_ws();
            if (!cur.done()) cur.fail("unexpected trailing input");
            add_reaction(cur, b, reactant, product, forward);
            add_reaction(cur, b, product, reactant, backward);
        } else {
            if (!cur.done()) cur.fail("unexpected trailing input");
            add_reaction(cur, b, reactant, product, forward);
        }
    }

    if (b.reactions.empty()) throw ParseError("SyntaxError", 1, 1, "no reactions declared");
    for (const auto& [label, line] : b.binding_line)
        if (!b.labels.count(label))
            throw ParseError("SyntaxError", line, 1, "binding for unknown rate label: " + label);

    try {
        return ReactionNetwork(std::move(b.species), std::move(b.complexes),
                               std::move(b.reactions), std::move(b.rates), name);
    } catch (const NetworkError& e) {
        throw ParseError("SyntaxError", line_no, 1, e.what());
    }
}

ReactionNetwork parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("SyntaxError", 0, 0, "cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    std::string name = path;
    if (auto slash = name.find_last_of("/\\"); slash != std::string::npos)
        name = name.substr(slash + 1);
    if (auto dot = name.find_last_of('.'); dot != std::string::npos) name = name.substr(0, dot);
    return parse(buffer.str(), name);
}

std::string serialize(const ReactionNetwork& net) {
    std::ostringstream os;
    os << "species ";
    for (size_t i = 0; i < net.species().size(); ++i)
        os << (i ? ", " : "") << net.species()[i];
    os << "\n";
    for (const auto& r : net.reactions())
        os << net.complex_text(r.reactant) << " -> " << net.complex_text(r.product) << " ; "
           << r.label << "\n";
    for (const auto& [label, value] : net.rate_values())
        os << label << " = " << value.str() << "\n";
    return os.str();
}

}  // namespace crn
