#include "cutmap/qasm.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <sstream>
#include <vector>

namespace cutmap {

QasmError::QasmError(const std::string &msg, int line, int column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
      line_(line),
      column_(column) {}

namespace {

enum class Tok { Ident, Number, String, Punct, Arrow, End };

struct Token {
    Tok type;
    std::string text;
    int line;
    int col;
};

std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        int l = line, cl = col;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
                ++j;
            out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), l, cl});
            advance(j - i);
        } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t j = i;
            while (j < src.size() && (std::isdigit(static_cast<unsigned char>(src[j])) || src[j] == '.'))
                ++j;
            if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
                std::size_t k = j + 1;
                if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
                if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
                    j = k;
                    while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
                }
            }
            out.push_back({Tok::Number, std::string(src.substr(i, j - i)), l, cl});
            advance(j - i);
        } else if (c == '"') {
            std::size_t j = i + 1;
            while (j < src.size() && src[j] != '"') ++j;
            if (j >= src.size()) throw QasmError("unterminated string", l, cl);
            out.push_back({Tok::String, std::string(src.substr(i + 1, j - i - 1)), l, cl});
            advance(j + 1 - i);
        } else if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
            out.push_back({Tok::Arrow, "->", l, cl});
            advance(2);
        } else if (std::string_view("()[],;+-*/^").find(c) != std::string_view::npos) {
            out.push_back({Tok::Punct, std::string(1, c), l, cl});
            advance(1);
        } else {
            throw QasmError(std::string("unexpected character '") + c + "'", l, cl);
        }
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

    Circuit run() {
        while (peek().type != Tok::End) statement();
        if (!circ_) return Circuit(0);
        return std::move(*circ_);
    }

private:
    std::vector<Token> t_;
    std::size_t p_ = 0;
    std::optional<Circuit> circ_;
    std::string qreg_;
    std::string creg_;

    const Token &peek() const { return t_[p_]; }
    const Token &take() { return t_[p_++]; }
    [[noreturn]] void fail(const std::string &msg, const Token &at) const {
        throw QasmError(msg, at.line, at.col);
    }
    bool is_punct(const std::string &s) const {
        return peek().type == Tok::Punct && peek().text == s;
    }
    void expect_punct(const std::string &s) {
        if (!is_punct(s)) fail("expected '" + s + "'", peek());
        take();
    }
    std::string expect_ident() {
        if (peek().type != Tok::Ident) fail("expected identifier", peek());
        return take().text;
    }
    int expect_int() {
        const Token &tk = peek();
        if (tk.type != Tok::Number || tk.text.find_first_of(".eE") != std::string::npos)
            fail("expected integer", tk);
        take();
        return std::stoi(tk.text);
    }

    void statement() {
        const Token &tk = peek();
        if (tk.type != Tok::Ident) fail("expected statement", tk);
        const std::string kw = tk.text;
        if (kw == "OPENQASM") {
            take();
            if (peek().type != Tok::Number) fail("expected version", peek());
            take();
            expect_punct(";");
        } else if (kw == "include") {
            take();
            if (peek().type != Tok::String) fail("expected file name", peek());
            take();
            expect_punct(";");
        } else if (kw == "qreg") {
            take();
            if (circ_) fail("multiple qregs are not supported", tk);
            qreg_ = expect_ident();
            expect_punct("[");
            int n = expect_int();
            expect_punct("]");
            expect_punct(";");
            circ_.emplace(n);
        } else if (kw == "creg") {
            take();
            creg_ = expect_ident();
            expect_punct("[");
            expect_int();
            expect_punct("]");
            expect_punct(";");
        } else if (kw == "barrier") {
            take();
            while (!is_punct(";")) {
                if (peek().type == Tok::End) fail("expected ';'", peek());
                take();
            }
            take();
        } else if (kw == "measure") {
            take();
            operand_list();
            if (peek().type != Tok::Arrow) fail("expected '->'", peek());
            take();
            expect_ident();
            if (is_punct("[")) {
                take();
                expect_int();
                expect_punct("]");
            }
            expect_punct(";");
        } else {
            gate_call();
        }
    }

    // Each operand is a list of qubit indices (a bare register name broadcasts).
    std::vector<std::vector<int>> operand_list() {
        std::vector<std::vector<int>> ops;
        do {
            if (!ops.empty()) take();
            const Token &at = peek();
            std::string reg = expect_ident();
            if (!circ_) fail("qreg must be declared before use", at);
            if (reg != qreg_) fail("unknown register '" + reg + "'", at);
            if (is_punct("[")) {
                take();
                const Token &it = peek();
                int q = expect_int();
                if (q < 0 || q >= circ_->num_qubits())
                    fail("qubit index " + std::to_string(q) + " out of range", it);
                expect_punct("]");
                ops.push_back({q});
            } else {
                std::vector<int> all(circ_->num_qubits());
                for (int q = 0; q < circ_->num_qubits(); ++q) all[q] = q;
                ops.push_back(all);
            }
        } while (is_punct(","));
        return ops;
    }

    double expr() {
        double v = term();
        while (is_punct("+") || is_punct("-")) {
            bool plus = take().text == "+";
            double r = term();
            v = plus ? v + r : v - r;
        }
        return v;
    }
    double term() {
        double v = power();
        while (is_punct("*") || is_punct("/")) {
            const Token &op = take();
            double r = power();
            if (op.text == "/") {
                if (r == 0.0) fail("division by zero", op);
                v /= r;
            } else {
                v *= r;
            }
        }
        return v;
    }
    double power() {
        double v = unary();
        if (is_punct("^")) {
            take();
            v = std::pow(v, power());
        }
        return v;
    }
    double unary() {
        if (is_punct("-")) {
            take();
            return -unary();
        }
        if (is_punct("+")) {
            take();
            return unary();
        }
        return atom();
    }
    double atom() {
        const Token &tk = peek();
        if (tk.type == Tok::Number) {
            take();
            try {
                return std::stod(tk.text);
            } catch (const std::exception &) {
                fail("bad number '" + tk.text + "'", tk);
            }
        }
        if (tk.type == Tok::Ident && tk.text == "pi") {
            take();
            return std::numbers::pi;
        }
        if (is_punct("(")) {
            take();
            double v = expr();
            expect_punct(")");
            return v;
        }
        fail("expected expression", tk);
    }

    void gate_call() {
        const Token &nt = take();
        if (!circ_) fail("qreg must be declared before gates", nt);
        std::vector<double> params;
        if (is_punct("(")) {
            take();
            if (!is_punct(")")) {
                params.push_back(expr());
                while (is_punct(",")) {
                    take();
                    params.push_back(expr());
                }
            }
            expect_punct(")");
        }
        auto ops = operand_list();
        expect_punct(";");

        const std::string &name = nt.text;
        auto need = [&](std::size_t np, std::size_t nq) {
            if (params.size() != np)
                fail(name + " expects " + std::to_string(np) + " parameter(s)", nt);
            if (ops.size() != nq) fail(name + " expects " + std::to_string(nq) + " operand(s)", nt);
        };

        if (name == "id") {
            need(0, 1);
            return;
        }
        if (name == "u1" || name == "p") {
            need(1, 1);
            for (int q : ops[0]) circ_->add(GateKind::RZ, {q}, {params[0]});
            return;
        }
        if (name == "u2" || name == "u3" || name == "u") {
            if (name == "u2") {
                need(2, 1);
                params.insert(params.begin(), std::numbers::pi / 2);
            } else {
                need(3, 1);
            }
            // u3(theta, phi, lambda) = RZ(phi) RY(theta) RZ(lambda) up to global phase
            for (int q : ops[0]) {
                circ_->add(GateKind::RZ, {q}, {params[2]});
                circ_->add(GateKind::RY, {q}, {params[0]});
                circ_->add(GateKind::RZ, {q}, {params[1]});
            }
            return;
        }
        std::optional<GateKind> kind = gate_kind_from_name(name == "cu1" ? "cp" : name);
        if (!kind) fail("unsupported gate '" + name + "'", nt);
        std::size_t arity = is_two_qubit(*kind) ? 2 : 1;
        need(static_cast<std::size_t>(param_count(*kind)), arity);
        if (arity == 1) {
            for (int q : ops[0]) circ_->add(*kind, {q}, params);
            return;
        }
        if (ops[0].size() != 1 || ops[1].size() != 1)
            fail(name + " needs indexed qubit operands", nt);
        if (ops[0][0] == ops[1][0]) fail(name + " needs two distinct qubits", nt);
        circ_->add(*kind, {ops[0][0], ops[1][0]}, params);
    }
};

std::string fmt_angle(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

Circuit parse_qasm(std::string_view text) { return Parser(tokenize(text)).run(); }

std::string to_qasm(const Circuit &c) {
    std::ostringstream os;
    os << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[" << c.num_qubits() << "];\n";
    int nmeas = 0;
    for (const auto &g : c.gates())
        if (g.kind == GateKind::MEASURE) ++nmeas;
    if (nmeas) os << "creg c[" << nmeas << "];\n";
    int m = 0;
    for (const auto &g : c.gates()) {
        auto q = [&](int i) { return "q[" + std::to_string(g.qubits[i]) + "]"; };
        if (g.kind == GateKind::MEASURE) {
            os << "measure " << q(0) << " -> c[" << m++ << "];\n";
            continue;
        }
        if (g.kind == GateKind::PREPARE) {
            os << "reset " << q(0) << ";\n";
            switch (static_cast<PrepState>(static_cast<int>(g.params[0]))) {
            case PrepState::Zero: break;
            case PrepState::One: os << "x " << q(0) << ";\n"; break;
            case PrepState::Plus: os << "h " << q(0) << ";\n"; break;
            case PrepState::IPlus: os << "h " << q(0) << ";\ns " << q(0) << ";\n"; break;
            }
            continue;
        }
        os << gate_name(g.kind);
        if (!g.params.empty()) {
            os << '(';
            for (std::size_t i = 0; i < g.params.size(); ++i)
                os << (i ? "," : "") << fmt_angle(g.params[i]);
            os << ')';
        }
        os << ' ' << q(0);
        if (g.qubits.size() == 2) os << ',' << q(1);
        os << ";\n";
    }
    return os.str();
}

}  // namespace cutmap
