#include "cutmap/benchmarks.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace cutmap::bench {

namespace {

void require_min(int n, int min, const char *name) {
    if (n < min)
        throw std::invalid_argument(std::string(name) + " needs at least " + std::to_string(min) +
                                    " qubits");
}

void ccx(Circuit &c, int a, int b, int t) {
    c.add(GateKind::H, {t});
    c.add(GateKind::CX, {b, t});
    c.add(GateKind::Tdg, {t});
    c.add(GateKind::CX, {a, t});
    c.add(GateKind::T, {t});
    c.add(GateKind::CX, {b, t});
    c.add(GateKind::Tdg, {t});
    c.add(GateKind::CX, {a, t});
    c.add(GateKind::T, {b});
    c.add(GateKind::T, {t});
    c.add(GateKind::H, {t});
    c.add(GateKind::CX, {a, b});
    c.add(GateKind::T, {a});
    c.add(GateKind::Tdg, {b});
    c.add(GateKind::CX, {a, b});
}

void maj(Circuit &c, int x, int y, int z) {
    c.add(GateKind::CX, {z, y});
    c.add(GateKind::CX, {z, x});
    ccx(c, x, y, z);
}

void uma(Circuit &c, int x, int y, int z) {
    ccx(c, x, y, z);
    c.add(GateKind::CX, {z, x});
    c.add(GateKind::CX, {x, y});
}

}  // namespace

Circuit ghz(int n) {
    require_min(n, 1, "ghz");
    Circuit c(n);
    c.add(GateKind::H, {0});
    for (int i = 0; i + 1 < n; ++i) c.add(GateKind::CX, {i, i + 1});
    return c;
}

Circuit linear_cluster(int n) {
    require_min(n, 1, "lc");
    Circuit c(n);
    for (int i = 0; i < n; ++i) c.add(GateKind::H, {i});
    for (int i = 0; i + 1 < n; ++i) c.add(GateKind::CZ, {i, i + 1});
    return c;
}

Circuit bernstein_vazirani(int n, std::optional<std::uint64_t> seed) {
    require_min(n, 2, "bv");
    const int anc = n - 1;
    std::vector<bool> bits(anc, true);
    if (seed) {
        std::mt19937_64 rng(*seed);
        bool any = false;
        for (int i = 0; i < anc; ++i) {
            bits[i] = (rng() & 1) != 0;
            any = any || bits[i];
        }
        if (!any) bits[rng() % anc] = true;
    }
    Circuit c(n);
    c.add(GateKind::X, {anc});
    for (int i = 0; i < n; ++i) c.add(GateKind::H, {i});
    for (int i = 0; i < anc; ++i)
        if (bits[i]) c.add(GateKind::CX, {i, anc});
    for (int i = 0; i < anc; ++i) c.add(GateKind::H, {i});
    return c;
}

Circuit qft(int n, bool cp_as_cx) {
    require_min(n, 1, "qft");
    Circuit c(n);
    for (int i = 0; i < n; ++i) {
        c.add(GateKind::H, {i});
        for (int j = i + 1; j < n; ++j) {
            double lam = std::numbers::pi / std::pow(2.0, j - i);
            if (!cp_as_cx) {
                c.add(GateKind::CP, {i, j}, {lam});
                continue;
            }
            c.add(GateKind::RZ, {i}, {lam / 2});
            c.add(GateKind::CX, {i, j});
            c.add(GateKind::RZ, {j}, {-lam / 2});
            c.add(GateKind::CX, {i, j});
            c.add(GateKind::RZ, {j}, {lam / 2});
        }
    }
    return c;
}

Circuit ripple_carry_adder(int n) {
    if (n < 4 || n % 2 != 0)
        throw std::invalid_argument("rca needs an even qubit count of at least 4");
    const int m = (n - 2) / 2;
    auto b = [](int i) { return 1 + 2 * i; };
    auto a = [](int i) { return 2 + 2 * i; };
    const int cin = 0, cout = n - 1;
    Circuit c(n);
    for (int i = 0; i < m; ++i) c.add(GateKind::X, {a(i)});
    c.add(GateKind::X, {b(0)});
    maj(c, cin, b(0), a(0));
    for (int i = 1; i < m; ++i) maj(c, a(i - 1), b(i), a(i));
    c.add(GateKind::CX, {a(m - 1), cout});
    for (int i = m - 1; i >= 1; --i) uma(c, a(i - 1), b(i), a(i));
    uma(c, cin, b(0), a(0));
    return c;
}

Circuit hardware_efficient_ansatz(int n, std::uint64_t seed) {
    require_min(n, 1, "hwea");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
    Circuit c(n);
    auto layer = [&] {
        for (int i = 0; i < n; ++i) {
            c.add(GateKind::RY, {i}, {angle(rng)});
            c.add(GateKind::RZ, {i}, {angle(rng)});
        }
    };
    layer();
    for (int i = 0; i + 1 < n; ++i) c.add(GateKind::CX, {i, i + 1});
    layer();
    return c;
}

Circuit supremacy(int n, std::uint64_t seed) {
    const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
    if (side < 2 || side * side != n)
        throw std::invalid_argument("spm needs a perfect-square qubit count of at least 4");
    std::mt19937_64 rng(seed);
    Circuit c(n);
    auto at = [side](int r, int col) { return r * side + col; };
    for (int i = 0; i < n; ++i) c.add(GateKind::H, {i});
    for (int cycle = 0; cycle < 8; ++cycle) {
        std::vector<bool> busy(n, false);
        const int pattern = cycle % 4;
        const bool horizontal = pattern < 2;
        const int parity = pattern % 2;
        for (int r = 0; r < side; ++r) {
            for (int col = 0; col < side; ++col) {
                int r2 = horizontal ? r : r + 1;
                int c2 = horizontal ? col + 1 : col;
                int lead = horizontal ? col : r;
                if (r2 >= side || c2 >= side || lead % 2 != parity) continue;
                int q1 = at(r, col), q2 = at(r2, c2);
                c.add(GateKind::CZ, {q1, q2});
                busy[q1] = busy[q2] = true;
            }
        }
        for (int q = 0; q < n; ++q) {
            if (busy[q]) continue;
            switch (rng() % 3) {
            case 0: c.add(GateKind::T, {q}); break;
            case 1: c.add(GateKind::RX, {q}, {std::numbers::pi / 2}); break;
            default: c.add(GateKind::RY, {q}, {std::numbers::pi / 2}); break;
            }
        }
    }
    return c;
}

std::vector<std::string> names() { return {"ghz", "lc", "bv", "qft", "qftcx", "rca", "hwea", "spm"}; }

Circuit make_benchmark(const std::string &name, int n, std::optional<std::uint64_t> seed) {
    if (name == "ghz") return ghz(n);
    if (name == "lc") return linear_cluster(n);
    if (name == "bv") return bernstein_vazirani(n, seed);
    if (name == "qft") return qft(n, false);
    if (name == "qftcx") return qft(n, true);
    if (name == "rca") return ripple_carry_adder(n);
    if (name == "hwea") return hardware_efficient_ansatz(n, seed.value_or(7));
    if (name == "spm") return supremacy(n, seed.value_or(7));
    throw std::invalid_argument("unknown benchmark '" + name + "'");
}

}  // namespace cutmap::bench
