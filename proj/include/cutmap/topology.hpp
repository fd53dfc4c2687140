#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace cutmap {

enum class QubitRole { Data, Comm };

inline constexpr double kDefaultCnotError = 0.01;
inline constexpr int kDefaultCommQubits = 2;

/// CNOT-equivalent costs of the communication model.
struct CommCost {
    int remote_gate = 25;
    int swap = 3;
};

/// One chip. Qubit indices are local to the QPU.
class Qpu {
public:
    /// @throws std::invalid_argument if the coupling graph or the data subgraph is
    /// disconnected, an edge is out of range, an error rate is outside [0,1) or no data
    /// qubit remains
    Qpu(int id, int num_physical, std::vector<std::pair<int, int>> coupling, std::vector<int> comm,
        std::map<std::pair<int, int>, double> cnot_error = {});

    int id() const { return id_; }
    int num_physical() const { return n_; }
    const std::vector<std::pair<int, int>> &coupling() const { return coupling_; }
    const std::vector<int> &comm() const { return comm_; }
    const std::vector<int> &data() const { return data_; }
    QubitRole role(int q) const { return roles_[q]; }
    const std::vector<int> &neighbors(int q) const { return adj_[q]; }
    bool coupled(int a, int b) const;
    /// Error of the CNOT on coupled pair (a,b), default when unset.
    double cnot_error(int a, int b) const;
    /// Hop count between data qubits using data-only paths; -1 for comm qubits.
    int data_distance(int a, int b) const { return dist_[a][b]; }
    /// Fewest hops from q to any COMM qubit over the full coupling graph.
    int comm_distance(int q) const { return comm_dist_[q]; }
    /// Product of (1 - error) along the most reliable data-only path.
    double path_reliability(int a, int b) const { return rel_[a][b]; }
    /// Degree within the data subgraph.
    int data_degree(int q) const;
    /// Mean (1 - error) over q's data-subgraph couplings.
    double avg_reliability(int q) const;

private:
    int id_;
    int n_;
    std::vector<std::pair<int, int>> coupling_;
    std::vector<int> comm_;
    std::vector<int> data_;
    std::vector<QubitRole> roles_;
    std::vector<std::vector<int>> adj_;
    std::map<std::pair<int, int>, double> err_;
    std::vector<std::vector<int>> dist_;
    std::vector<std::vector<double>> rel_;
    std::vector<int> comm_dist_;
};

/// Physical qubit address across the system.
struct PhysQubit {
    int qpu = 0;
    int index = 0;
    auto operator<=>(const PhysQubit &) const = default;
};

/// A 1D chain of QPUs; QPU i links to i-1 and i+1.
class DqcTopology {
public:
    DqcTopology() = default;
    DqcTopology(std::vector<Qpu> qpus, std::string name = "custom", CommCost cost = {});

    const std::string &name() const { return name_; }
    int num_qpus() const { return static_cast<int>(qpus_.size()); }
    const Qpu &qpu(int i) const { return qpus_.at(i); }
    const std::vector<Qpu> &qpus() const { return qpus_; }
    const CommCost &cost() const { return cost_; }
    /// Chain distance; an EPR pair across d links costs d pairs.
    static int qpu_distance(int a, int b) { return a > b ? a - b : b - a; }

    std::vector<int> data_capacity() const;
    int max_capacity() const;
    int total_capacity() const;

private:
    std::vector<Qpu> qpus_;
    std::string name_;
    CommCost cost_;
};

/// Device names usable in presets: manila, nairobi, melbourne, toronto, manhattan, washington.
std::vector<std::string> device_names();

/// Coupling map of a named device.
/// @throws std::invalid_argument for unknown names
std::pair<int, std::vector<std::pair<int, int>>> device_coupling(const std::string &device);

/// Picks `count` COMM qubits: lowest degree first (lowest index on ties), later picks prefer
/// the largest distance to those already chosen, and every pick keeps the data subgraph
/// connected.
/// @throws std::invalid_argument if no such choice exists
std::vector<int> choose_comm_qubits(int num_physical, const std::vector<std::pair<int, int>> &coupling,
                                    int count = kDefaultCommQubits);

/// "<device>-x<N>", e.g. "manila-x20": N identical QPUs, uniform error, 2 COMM each.
/// @throws std::invalid_argument for a malformed or unknown preset
DqcTopology preset_topology(const std::string &preset);

/// Parses the topology JSON document.
/// @throws std::invalid_argument naming the offending field
DqcTopology load_topology(const std::string &json_text);

/// Preset name or path to a JSON file.
DqcTopology resolve_topology(const std::string &preset_or_path);

}  // namespace cutmap
