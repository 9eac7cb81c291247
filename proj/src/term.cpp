#include "msa/term.hpp"

#include <cctype>

#include "msa/algebra.hpp"

namespace msa {

Term Term::var(std::string name, int sort) {
    Term t;
    t.var_ = true;
    t.head_ = std::move(name);
    t.sort_ = sort;
    return t;
}

Term Term::app(const Signature& sig, int op, std::vector<Term> children) {
    const OpSym& sym = sig.ops[op];
    if (children.size() != sym.arity.size())
        throw ValidationError("arity mismatch applying " + sym.name);
    for (size_t i = 0; i < children.size(); ++i)
        if (children[i].sort() != sym.arity[i])
            throw ValidationError("sort mismatch in argument " + std::to_string(i) + " of " +
                                  sym.name);
    Term t;
    t.var_ = false;
    t.head_ = sym.name;
    t.op_ = op;
    t.sort_ = sym.coarity;
    t.kids_ = std::move(children);
    return t;
}

Term Term::app(const Signature& sig, std::string_view op_name, std::vector<Term> children) {
    int op = sig.op_index(op_name);
    if (op < 0) throw ValidationError("unknown operation: " + std::string(op_name));
    return app(sig, op, std::move(children));
}

int Term::node_count() const {
    int n = 0;
    std::vector<const Term*> stack{this};
    while (!stack.empty()) {
        const Term* t = stack.back();
        stack.pop_back();
        ++n;
        for (const Term& k : t->kids_) stack.push_back(&k);
    }
    return n;
}

// -------- concrete syntax --------

namespace {

struct Lexer {
    std::string_view text;
    size_t pos = 0;
    int line = 1, col = 1;

    void advance() {
        if (text[pos] == '\n') { ++line; col = 1; }
        else ++col;
        ++pos;
    }
    void skip_ws() {
        while (pos < text.size() &&
               (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' || text[pos] == '\r'))
            advance();
    }
    bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
    bool ident_rest(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '-';
    }
    // kinds: '(' , ')', 'i' (ident), 'e' (end)
    char peek_kind() {
        skip_ws();
        if (pos >= text.size()) return 'e';
        char c = text[pos];
        if (c == '(' || c == ')') return c;
        if (ident_start(c)) return 'i';
        throw ParseError(std::string("lexical error: unexpected character '") + c + "'", line, col);
    }
    void expect(char kind, const char* what) {
        if (peek_kind() != kind) throw ParseError(std::string("expected ") + what, line, col);
        if (kind != 'e') advance_token(kind);
    }
    std::string advance_token(char kind) {
        if (kind == '(' || kind == ')') {
            advance();
            return std::string(1, kind);
        }
        std::string id;
        id += text[pos];
        advance();
        while (pos < text.size() && ident_rest(text[pos])) {
            id += text[pos];
            advance();
        }
        return id;
    }
};

} // namespace

Term parse_term(std::string_view text, const Signature& sig, const GeneratorSet& gens) {
    Lexer lx{text};

    // Frames carry a pending application; children accumulate as they close.
    struct Frame {
        std::string head;
        int line, col;
        std::vector<Term> kids;
    };
    std::vector<Frame> stack;
    std::optional<Term> done;

    auto close_leaf = [&](Frame& f) -> Term {
        // a leaf (x) is a generator occurrence iff declared, else a nullary op;
        // a name declared at several sorts has no unique reading and is rejected
        int gen_sort = -1;
        for (int gs = 0; gs < gens.sort_count(); ++gs)
            if (gens.element_index(gs, f.head) >= 0) {
                if (gen_sort >= 0)
                    throw ParseError("ambiguous generator '" + f.head + "' (several sorts)",
                                     f.line, f.col);
                gen_sort = gs;
            }
        if (gen_sort >= 0) return Term::var(f.head, gen_sort);
        int op = sig.op_index(f.head);
        if (op < 0)
            throw ParseError("unknown symbol '" + f.head + "'", f.line, f.col);
        if (!sig.ops[op].arity.empty())
            throw ParseError("arity mismatch: " + f.head + " expects " +
                                 std::to_string(sig.ops[op].arity.size()) + " arguments",
                             f.line, f.col);
        return Term::app(sig, op, {});
    };
    auto close_app = [&](Frame& f) -> Term {
        int op = sig.op_index(f.head);
        if (op < 0) throw ParseError("unknown symbol '" + f.head + "'", f.line, f.col);
        const OpSym& sym = sig.ops[op];
        if (f.kids.size() != sym.arity.size())
            throw ParseError("arity mismatch: " + f.head + " expects " +
                                 std::to_string(sym.arity.size()) + " arguments, got " +
                                 std::to_string(f.kids.size()),
                             f.line, f.col);
        for (size_t i = 0; i < f.kids.size(); ++i)
            if (f.kids[i].sort() != sym.arity[i])
                throw ParseError("sort mismatch: argument " + std::to_string(i) + " of " + f.head +
                                     " has sort " + sig.sorts[f.kids[i].sort()] + ", expected " +
                                     sig.sorts[sym.arity[i]],
                                 f.line, f.col);
        return Term::app(sig, op, std::move(f.kids));
    };

    while (true) {
        char k = lx.peek_kind();
        if (k == '(') {
            if (done) throw ParseError("trailing input after term", lx.line, lx.col);
            lx.advance_token('(');
            int l = lx.line, c = lx.col;
            if (lx.peek_kind() != 'i') throw ParseError("expected identifier", lx.line, lx.col);
            std::string head = lx.advance_token('i');
            stack.push_back(Frame{std::move(head), l, c, {}});
        } else if (k == ')') {
            if (stack.empty()) throw ParseError("unbalanced ')'", lx.line, lx.col);
            lx.advance_token(')');
            Frame f = std::move(stack.back());
            stack.pop_back();
            Term t = f.kids.empty() ? close_leaf(f) : close_app(f);
            if (stack.empty()) done = std::move(t);
            else stack.back().kids.push_back(std::move(t));
        } else if (k == 'e') {
            if (!stack.empty()) throw ParseError("unexpected end of input", lx.line, lx.col);
            if (!done) throw ParseError("empty input, expected a term", lx.line, lx.col);
            return *done;
        } else {
            throw ParseError("expected '(' or ')'", lx.line, lx.col);
        }
    }
}

std::string print_term(const Term& t) {
    std::string out;
    // explicit stack; nullptr marks a pending ')'
    std::vector<const Term*> stack{&t};
    while (!stack.empty()) {
        const Term* cur = stack.back();
        stack.pop_back();
        if (!cur) {
            out += ')';
            continue;
        }
        if (!out.empty() && out.back() != '(') out += ' ';
        out += '(';
        out += cur->head();
        stack.push_back(nullptr);
        const auto& kids = cur->children();
        for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(&*it);
    }
    return out;
}

// -------- evaluation --------

int evaluate(const Term& t, const FiniteAlgebra& b, const SortedMap& assign) {
    if (!(assign.codomain == b.carriers))
        throw ValidationError("evaluate: assignment does not land in the algebra's carriers");
    struct Item {
        const Term* node;
        size_t next_child;
    };
    std::vector<Item> stack{{&t, 0}};
    std::vector<int> values; // evaluated children, shared value stack
    while (!stack.empty()) {
        Item& top = stack.back();
        const Term* node = top.node;
        if (node->is_var()) {
            int s = node->sort();
            int i = assign.domain.element_index(s, node->head());
            if (i < 0)
                throw ValidationError("evaluate: unassigned generator '" + node->head() + "'");
            values.push_back(assign.images[s][i]);
            stack.pop_back();
            continue;
        }
        if (top.next_child < node->children().size()) {
            ++top.next_child;
            stack.push_back({&node->children()[top.next_child - 1], 0});
            continue;
        }
        size_t n = node->children().size();
        std::vector<int> args(values.end() - n, values.end());
        values.resize(values.size() - n);
        values.push_back(b.op_value(node->op_index(), args));
        stack.pop_back();
    }
    return values.back();
}

// -------- substitution --------

GeneratorMap GeneratorMap::identity(const GeneratorSet& gens) {
    GeneratorMap g;
    g.domain = gens;
    g.codomain = gens;
    g.images.resize(gens.sort_count());
    for (int s = 0; s < gens.sort_count(); ++s)
        for (int i = 0; i < gens.size(s); ++i)
            g.images[s].push_back(Term::var(gens.carriers[s][i], s));
    return g;
}

std::vector<std::string> GeneratorMap::validate() const {
    std::vector<std::string> diags;
    if (domain.sorts != codomain.sorts) diags.push_back("generator map sort lists differ");
    if (images.size() != domain.carriers.size()) {
        diags.push_back("image table not parallel to domain");
        return diags;
    }
    for (int s = 0; s < domain.sort_count(); ++s) {
        if (static_cast<int>(images[s].size()) != domain.size(s))
            diags.push_back("generator map not total at sort " + domain.sorts[s]);
        for (const Term& t : images[s])
            if (t.sort() != s)
                diags.push_back("sort mismatch: image of a sort-" + domain.sorts[s] +
                                " generator has another sort");
    }
    return diags;
}

Term free_hom(const Signature& sig, const GeneratorMap& g, const Term& t) {
    auto diags = g.validate();
    if (!diags.empty()) throw ValidationError("free_hom: " + diags.front());
    struct Item {
        const Term* node;
        size_t next_child;
    };
    std::vector<Item> stack{{&t, 0}};
    std::vector<Term> values;
    while (!stack.empty()) {
        Item& top = stack.back();
        const Term* node = top.node;
        if (node->is_var()) {
            int s = node->sort();
            int i = g.domain.element_index(s, node->head());
            if (i < 0) throw ValidationError("free_hom: generator '" + node->head() +
                                             "' not in the domain generator set");
            values.push_back(g.images[s][i]);
            stack.pop_back();
            continue;
        }
        if (top.next_child < node->children().size()) {
            ++top.next_child;
            stack.push_back({&node->children()[top.next_child - 1], 0});
            continue;
        }
        size_t n = node->children().size();
        std::vector<Term> kids(std::make_move_iterator(values.end() - n),
                               std::make_move_iterator(values.end()));
        values.resize(values.size() - n);
        values.push_back(Term::app(sig, node->op_index(), std::move(kids)));
        stack.pop_back();
    }
    return values.back();
}

GeneratorMap compose(const Signature& sig, const GeneratorMap& g2, const GeneratorMap& g1) {
    if (!(g1.codomain == g2.domain))
        throw ValidationError("compose(GeneratorMap): middle generator sets differ");
    GeneratorMap r;
    r.domain = g1.domain;
    r.codomain = g2.codomain;
    r.images.resize(g1.images.size());
    for (size_t s = 0; s < g1.images.size(); ++s)
        for (const Term& t : g1.images[s]) r.images[s].push_back(free_hom(sig, g2, t));
    return r;
}

SortedMap lift_through_epi(const FiniteAlgebra& b, const FiniteAlgebra& c, const SortedMap& f,
                           const SortedMap& g) {
    if (!(f.codomain == c.carriers) || !(f.domain == b.carriers))
        throw ValidationError("lift_through_epi: map endpoints do not match the algebras");
    if (!(g.codomain == c.carriers))
        throw ValidationError("lift_through_epi: assignment does not land in the codomain");
    SortedMap h;
    h.domain = g.domain;
    h.codomain = b.carriers;
    h.images.resize(g.domain.sort_count());
    for (int s = 0; s < g.domain.sort_count(); ++s) {
        for (int i = 0; i < g.domain.size(s); ++i) {
            int target = g.images[s][i];
            int pre = -1;
            for (int x = 0; x < b.size(s); ++x)
                if (f.images[s][x] == target) { pre = x; break; }
            if (pre < 0)
                throw ValidationError("lift_through_epi: no preimage at sort " +
                                      g.domain.sorts[s] + " for generator " +
                                      g.domain.carriers[s][i]);
            h.images[s].push_back(pre);
        }
    }
    return h;
}

} // namespace msa
