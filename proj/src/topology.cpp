#include "cutmap/topology.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <queue>
#include <regex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "json.hpp"

namespace cutmap {

namespace {

using Edges = std::vector<std::pair<int, int>>;

std::pair<int, int> ordered(int a, int b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }

std::vector<std::vector<int>> adjacency(int n, const Edges &e) {
    std::vector<std::vector<int>> adj(n);
    for (auto [a, b] : e) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto &v : adj) std::sort(v.begin(), v.end());
    return adj;
}

std::vector<int> bfs(const std::vector<std::vector<int>> &adj, int src, const std::vector<bool> &allowed) {
    std::vector<int> d(adj.size(), -1);
    if (!allowed[src]) return d;
    std::queue<int> q;
    d[src] = 0;
    q.push(src);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v : adj[u])
            if (allowed[v] && d[v] < 0) {
                d[v] = d[u] + 1;
                q.push(v);
            }
    }
    return d;
}

bool connected(const std::vector<std::vector<int>> &adj, const std::vector<bool> &allowed) {
    int first = -1, count = 0;
    for (std::size_t i = 0; i < allowed.size(); ++i)
        if (allowed[i]) {
            if (first < 0) first = static_cast<int>(i);
            ++count;
        }
    if (count == 0) return false;
    auto d = bfs(adj, first, allowed);
    return std::count_if(d.begin(), d.end(), [](int x) { return x >= 0; }) == count;
}

// Rows of consecutive qubits joined by bridge qubits: the IBM heavy-hex layout.
Edges heavy_hex(const std::vector<std::pair<int, int>> &rows, const std::vector<std::array<int, 3>> &bridges) {
    Edges e;
    for (auto [lo, hi] : rows)
        for (int q = lo; q < hi; ++q) e.emplace_back(q, q + 1);
    for (auto [a, mid, b] : bridges) {
        e.emplace_back(a, mid);
        e.emplace_back(mid, b);
    }
    return e;
}

}  // namespace

Qpu::Qpu(int id, int num_physical, std::vector<std::pair<int, int>> coupling, std::vector<int> comm,
         std::map<std::pair<int, int>, double> errors)
    : id_(id), n_(num_physical), coupling_(std::move(coupling)), comm_(std::move(comm)) {
    const std::string where = "qpu " + std::to_string(id) + ": ";
    if (n_ < 1) throw std::invalid_argument(where + "needs at least one physical qubit");
    std::set<std::pair<int, int>> seen;
    for (auto &[a, b] : coupling_) {
        if (a < 0 || b < 0 || a >= n_ || b >= n_ || a == b)
            throw std::invalid_argument(where + "coupling edge (" + std::to_string(a) + "," +
                                        std::to_string(b) + ") is invalid");
        seen.insert(ordered(a, b));
    }
    coupling_.assign(seen.begin(), seen.end());
    for (auto &[k, p] : errors) {
        auto key = ordered(k.first, k.second);
        if (!seen.count(key))
            throw std::invalid_argument(where + "cnot_error given for uncoupled pair " +
                                        std::to_string(key.first) + "-" + std::to_string(key.second));
        if (!(p >= 0.0 && p < 1.0))
            throw std::invalid_argument(where + "cnot_error must lie in [0,1)");
        err_[key] = p;
    }
    roles_.assign(n_, QubitRole::Data);
    for (int c : comm_) {
        if (c < 0 || c >= n_) throw std::invalid_argument(where + "comm qubit out of range");
        if (roles_[c] == QubitRole::Comm) throw std::invalid_argument(where + "comm qubit repeated");
        roles_[c] = QubitRole::Comm;
    }
    for (int q = 0; q < n_; ++q)
        if (roles_[q] == QubitRole::Data) data_.push_back(q);
    if (data_.empty()) throw std::invalid_argument(where + "data capacity must be at least 1");

    adj_ = adjacency(n_, coupling_);
    std::vector<bool> all(n_, true), data_only(n_, false);
    for (int q : data_) data_only[q] = true;
    if (n_ > 1 && !connected(adj_, all)) throw std::invalid_argument(where + "coupling graph is disconnected");
    if (!connected(adj_, data_only)) throw std::invalid_argument(where + "data qubits are not connected");

    dist_.assign(n_, std::vector<int>(n_, -1));
    for (int q : data_) dist_[q] = bfs(adj_, q, data_only);

    comm_dist_.assign(n_, std::numeric_limits<int>::max());
    for (int c : comm_) {
        auto d = bfs(adj_, c, all);
        for (int q = 0; q < n_; ++q)
            if (d[q] >= 0) comm_dist_[q] = std::min(comm_dist_[q], d[q]);
    }

    // Most reliable path = shortest path under -log(1 - error).
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> w(n_, std::vector<double>(n_, inf));
    for (int q : data_) w[q][q] = 0;
    for (auto [a, b] : coupling_)
        if (data_only[a] && data_only[b]) w[a][b] = w[b][a] = -std::log1p(-cnot_error(a, b));
    for (int k : data_)
        for (int i : data_)
            for (int j : data_)
                if (w[i][k] + w[k][j] < w[i][j]) w[i][j] = w[i][k] + w[k][j];
    rel_.assign(n_, std::vector<double>(n_, 0.0));
    for (int i : data_)
        for (int j : data_) rel_[i][j] = std::exp(-w[i][j]);
}

bool Qpu::coupled(int a, int b) const {
    return std::binary_search(adj_[a].begin(), adj_[a].end(), b);
}

double Qpu::cnot_error(int a, int b) const {
    auto it = err_.find(ordered(a, b));
    return it == err_.end() ? kDefaultCnotError : it->second;
}

int Qpu::data_degree(int q) const {
    return static_cast<int>(std::count_if(adj_[q].begin(), adj_[q].end(),
                                          [&](int v) { return roles_[v] == QubitRole::Data; }));
}

double Qpu::avg_reliability(int q) const {
    double s = 0;
    int k = 0;
    for (int v : adj_[q]) {
        if (roles_[v] != QubitRole::Data) continue;
        s += 1.0 - cnot_error(q, v);
        ++k;
    }
    return k ? s / k : 0.0;
}

DqcTopology::DqcTopology(std::vector<Qpu> qpus, std::string name, CommCost cost)
    : qpus_(std::move(qpus)), name_(std::move(name)), cost_(cost) {
    if (qpus_.empty()) throw std::invalid_argument("qpus: at least one QPU is required");
    for (std::size_t i = 0; i < qpus_.size(); ++i)
        if (qpus_[i].id() != static_cast<int>(i))
            throw std::invalid_argument("qpus[" + std::to_string(i) + "].id: ids must be 0..n-1 in order");
}

std::vector<int> DqcTopology::data_capacity() const {
    std::vector<int> cap;
    for (const auto &q : qpus_) cap.push_back(static_cast<int>(q.data().size()));
    return cap;
}

int DqcTopology::max_capacity() const {
    int m = 0;
    for (int c : data_capacity()) m = std::max(m, c);
    return m;
}

int DqcTopology::total_capacity() const {
    int s = 0;
    for (int c : data_capacity()) s += c;
    return s;
}

std::vector<std::string> device_names() {
    return {"manila", "nairobi", "melbourne", "toronto", "manhattan", "washington"};
}

std::pair<int, Edges> device_coupling(const std::string &device) {
    if (device == "manila") return {5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}};
    if (device == "nairobi") return {7, {{0, 1}, {1, 2}, {1, 3}, {3, 5}, {4, 5}, {5, 6}}};
    if (device == "melbourne")
        return {15, {{1, 0},  {1, 2},  {2, 3},   {4, 3},   {4, 10},  {5, 4},   {5, 6},
                     {5, 9},  {6, 8},  {7, 8},   {9, 8},   {9, 10},  {11, 3},  {11, 10},
                     {11, 12}, {12, 2}, {13, 1}, {13, 12}, {14, 0}, {14, 13}}};
    if (device == "toronto")
        return {27, {{0, 1},   {1, 2},   {1, 4},   {2, 3},   {3, 5},   {4, 7},   {5, 8},
                     {6, 7},   {7, 10},  {8, 9},   {8, 11},  {10, 12}, {11, 14}, {12, 13},
                     {12, 15}, {13, 14}, {14, 16}, {15, 18}, {16, 19}, {17, 18}, {18, 21},
                     {19, 20}, {19, 22}, {21, 23}, {22, 25}, {23, 24}, {24, 25}, {25, 26}}};
    if (device == "manhattan")
        return {65, heavy_hex({{0, 9}, {13, 23}, {27, 37}, {41, 51}, {55, 64}},
                              {{0, 10, 13},  {4, 11, 17},  {8, 12, 21},  {15, 24, 29},
                               {19, 25, 33}, {23, 26, 37}, {27, 38, 41}, {31, 39, 45},
                               {35, 40, 49}, {43, 52, 56}, {47, 53, 60}, {51, 54, 64}})};
    if (device == "washington")
        return {127, heavy_hex({{0, 13}, {18, 32}, {37, 51}, {56, 70}, {75, 89}, {94, 108}, {113, 126}},
                               {{0, 14, 18},    {4, 15, 22},    {8, 16, 26},    {12, 17, 30},
                                {20, 33, 39},   {24, 34, 43},   {28, 35, 47},   {32, 36, 51},
                                {37, 52, 56},   {41, 53, 60},   {45, 54, 64},   {49, 55, 68},
                                {58, 71, 77},   {62, 72, 81},   {66, 73, 85},   {70, 74, 89},
                                {75, 90, 94},   {79, 91, 98},   {83, 92, 102},  {87, 93, 106},
                                {96, 109, 114}, {100, 110, 118}, {104, 111, 122}, {108, 112, 126}})};
    throw std::invalid_argument("unknown device '" + device + "'");
}

std::vector<int> choose_comm_qubits(int n, const Edges &coupling, int count) {
    auto adj = adjacency(n, coupling);
    std::vector<bool> data(n, true);
    std::vector<int> chosen;
    std::vector<int> nearest(n, std::numeric_limits<int>::max());
    std::vector<bool> all(n, true);
    for (int k = 0; k < count; ++k) {
        int best = -1;
        for (int q = 0; q < n; ++q) {
            if (!data[q]) continue;
            data[q] = false;
            bool ok = connected(adj, data);
            data[q] = true;
            if (!ok) continue;
            auto key = [&](int x) {
                return std::tuple(adj[x].size(), -static_cast<long>(chosen.empty() ? 0 : nearest[x]), x);
            };
            if (best < 0 || key(q) < key(best)) best = q;
        }
        if (best < 0)
            throw std::invalid_argument("cannot reserve " + std::to_string(count) +
                                        " comm qubits and keep the data qubits connected");
        data[best] = false;
        chosen.push_back(best);
        auto d = bfs(adj, best, all);
        for (int q = 0; q < n; ++q)
            if (d[q] >= 0) nearest[q] = std::min(nearest[q], d[q]);
    }
    return chosen;
}

DqcTopology preset_topology(const std::string &preset) {
    static const std::regex re(R"(([a-z]+)-x([0-9]+))");
    std::smatch m;
    if (!std::regex_match(preset, m, re))
        throw std::invalid_argument("preset '" + preset + "' is not of the form <device>-x<N>");
    const std::string device = m[1];
    const int count = std::stoi(m[2]);
    if (count < 1 || count > 1000) throw std::invalid_argument("preset QPU count must be in 1..1000");
    auto [n, edges] = device_coupling(device);
    auto comm = choose_comm_qubits(n, edges);
    std::vector<Qpu> qpus;
    for (int i = 0; i < count; ++i) qpus.emplace_back(i, n, edges, comm);
    return DqcTopology(std::move(qpus), preset);
}

DqcTopology load_topology(const std::string &text) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw std::invalid_argument(std::string("topology JSON: ") + e.what());
    }
    if (!doc.is_object()) throw std::invalid_argument("topology: expected an object");
    if (doc.contains("chain") && doc["chain"] != true)
        throw std::invalid_argument("chain: only chain-connected QPUs are supported");
    if (!doc.contains("qpus") || !doc["qpus"].is_array())
        throw std::invalid_argument("qpus: missing or not an array");
    CommCost cost;
    if (doc.contains("remote_gate_cnot_equiv")) cost.remote_gate = doc["remote_gate_cnot_equiv"].get<int>();
    if (doc.contains("swap_cnot_equiv")) cost.swap = doc["swap_cnot_equiv"].get<int>();
    std::vector<Qpu> qpus;
    const auto &arr = doc["qpus"];
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto &jq = arr[i];
        const std::string at = "qpus[" + std::to_string(i) + "]";
        try {
            if (!jq.is_object()) throw std::invalid_argument(at + ": expected an object");
            int id = jq.value("id", static_cast<int>(i));
            if (!jq.contains("coupling") || !jq["coupling"].is_array())
                throw std::invalid_argument(at + ".coupling: missing or not an array");
            Edges edges;
            int maxq = -1;
            for (std::size_t k = 0; k < jq["coupling"].size(); ++k) {
                const auto &e = jq["coupling"][k];
                if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
                    throw std::invalid_argument(at + ".coupling[" + std::to_string(k) + "]: expected [i,j]");
                edges.emplace_back(e[0].get<int>(), e[1].get<int>());
                maxq = std::max({maxq, edges.back().first, edges.back().second});
            }
            int n = jq.contains("num_qubits") ? jq["num_qubits"].get<int>() : maxq + 1;
            std::vector<int> comm;
            if (jq.contains("comm")) {
                if (!jq["comm"].is_array()) throw std::invalid_argument(at + ".comm: expected an array");
                comm = jq["comm"].get<std::vector<int>>();
            } else {
                comm = choose_comm_qubits(n, edges);
            }
            std::map<std::pair<int, int>, double> err;
            if (jq.contains("cnot_error")) {
                if (!jq["cnot_error"].is_object())
                    throw std::invalid_argument(at + ".cnot_error: expected an object");
                for (auto it = jq["cnot_error"].begin(); it != jq["cnot_error"].end(); ++it) {
                    int a = 0, b = 0;
                    char dash = 0;
                    std::istringstream ks(it.key());
                    if (!(ks >> a >> dash >> b) || dash != '-' || !it.value().is_number())
                        throw std::invalid_argument(at + ".cnot_error[\"" + it.key() + "\"]: expected \"i-j\": p");
                    err[{a, b}] = it.value().get<double>();
                }
            }
            qpus.emplace_back(id, n, std::move(edges), std::move(comm), std::move(err));
        } catch (const nlohmann::json::exception &e) {
            throw std::invalid_argument(at + ": " + e.what());
        } catch (const std::invalid_argument &e) {
            std::string msg = e.what();
            if (msg.rfind("qpus", 0) == 0) throw;
            throw std::invalid_argument(at + ": " + msg);
        }
    }
    return DqcTopology(std::move(qpus), doc.value("name", std::string("custom")), cost);
}

DqcTopology resolve_topology(const std::string &preset_or_path) {
    std::ifstream in(preset_or_path);
    if (!in) return preset_topology(preset_or_path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_topology(ss.str());
}

}  // namespace cutmap
