#include "aps/instance.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace aps {

using nlohmann::json;

namespace {

template <class... Ts> struct overloaded : Ts... {
    using Ts::operator()...;
};

double finite_number(const json &value, const char *what) {
    if (!value.is_number()) {
        throw std::invalid_argument(std::string(what) + " must be a number");
    }
    const double d = value.get<double>();
    if (!std::isfinite(d)) {
        throw std::invalid_argument(std::string(what) + " must be finite");
    }
    return d;
}

unsigned vertex_index(const json &value) {
    if (!value.is_number_integer() || value.get<long long>() < 0) {
        throw std::invalid_argument("edge endpoints must be non-negative integers");
    }
    return value.get<unsigned>();
}

std::optional<double> optional_target(const json &doc) {
    if (!doc.contains("target")) {
        return std::nullopt;
    }
    return finite_number(doc.at("target"), "target");
}

ProblemInstance parse_subset_sum(const json &doc) {
    if (!doc.contains("elements") || !doc.at("elements").is_array()) {
        throw std::invalid_argument("subset-sum instance needs an \"elements\" array");
    }
    if (!doc.contains("target")) {
        throw std::invalid_argument("subset-sum instance needs a \"target\"");
    }
    SubsetSumInstance inst;
    for (const auto &e : doc.at("elements")) {
        inst.elements.push_back(finite_number(e, "subset-sum element"));
    }
    inst.target = finite_number(doc.at("target"), "target");
    inst.validate();
    if (inst.target == 0.0) {
        throw std::invalid_argument("subset-sum target must be non-zero");
    }
    const double target = inst.target;
    return ProblemInstance(std::move(inst), target);
}

ProblemInstance parse_maxcut(const json &doc) {
    if (!doc.contains("vertices") || !doc.at("vertices").is_number_integer() ||
        doc.at("vertices").get<long long>() < 1) {
        throw std::invalid_argument("maxcut instance needs a positive integer \"vertices\"");
    }
    Graph g(doc.at("vertices").get<unsigned>());
    if (doc.contains("edges")) {
        if (!doc.at("edges").is_array()) {
            throw std::invalid_argument("\"edges\" must be an array");
        }
        for (const auto &e : doc.at("edges")) {
            if (!e.is_array() || e.size() < 2 || e.size() > 3) {
                throw std::invalid_argument("each edge must be [j, l] or [j, l, w]");
            }
            const double w = e.size() == 3 ? finite_number(e[2], "edge weight") : 1.0;
            g.add_edge(vertex_index(e[0]), vertex_index(e[1]), w);
        }
    }
    auto target = optional_target(doc);
    if (target && *target == 0.0) {
        throw std::invalid_argument("maxcut target (lambda) must be non-zero");
    }
    return ProblemInstance(std::move(g), target);
}

ProblemInstance parse_diagonal(const json &doc) {
    if (!doc.contains("diag") || !doc.at("diag").is_array()) {
        throw std::invalid_argument("diagonal instance needs a \"diag\" array");
    }
    std::vector<double> diag;
    for (const auto &d : doc.at("diag")) {
        diag.push_back(finite_number(d, "diagonal entry"));
    }
    auto target = optional_target(doc);
    if (target && *target == 0.0) {
        throw std::invalid_argument("diagonal target must be non-zero");
    }
    return ProblemInstance(DiagonalHamiltonian(std::move(diag)), target);
}

} // namespace

ProblemInstance::ProblemInstance(Problem problem, std::optional<double> target)
    : problem_(std::move(problem)), target_(target) {}

std::string ProblemInstance::type_name() const {
    return std::visit(overloaded{[](const SubsetSumInstance &) { return "subset-sum"; },
                                 [](const Graph &) { return "maxcut"; },
                                 [](const DiagonalHamiltonian &) { return "diagonal"; }},
                      problem_);
}

unsigned ProblemInstance::work_qubits() const {
    return std::visit(overloaded{[](const SubsetSumInstance &s) { return s.size(); },
                                 [](const Graph &g) { return g.vertices(); },
                                 [](const DiagonalHamiltonian &h) { return h.qubits(); }},
                      problem_);
}

DiagonalHamiltonian ProblemInstance::hamiltonian() const {
    return std::visit(
        overloaded{[](const SubsetSumInstance &s) { return subset_sum_hamiltonian(s); },
                   [](const Graph &g) { return maxcut_hamiltonian(g); },
                   [](const DiagonalHamiltonian &h) { return h; }},
        problem_);
}

double ProblemInstance::default_target() const {
    if (target_) {
        return *target_;
    }
    if (const auto *g = std::get_if<Graph>(&problem_)) {
        const double w = g->total_weight();
        return w > 0.0 ? w : 1.0;
    }
    throw std::invalid_argument(type_name() + " instance has no target; pass one explicitly");
}

ProblemInstance parse_instance(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error &e) {
        throw std::invalid_argument(std::string("instance is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("type") || !doc.at("type").is_string()) {
        throw std::invalid_argument("instance must be an object with a \"type\" string");
    }
    const auto type = doc.at("type").get<std::string>();
    try {
        if (type == "subset-sum") {
            return parse_subset_sum(doc);
        }
        if (type == "maxcut") {
            return parse_maxcut(doc);
        }
        if (type == "diagonal") {
            return parse_diagonal(doc);
        }
    } catch (const json::exception &e) {
        throw std::invalid_argument(std::string("malformed instance: ") + e.what());
    }
    throw std::invalid_argument("unknown instance type '" + type + "'");
}

ProblemInstance load_instance(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open instance file " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_instance(buffer.str());
}

std::string instance_to_json(const ProblemInstance &instance) {
    json doc;
    doc["type"] = instance.type_name();
    std::visit(overloaded{[&](const SubsetSumInstance &s) {
                              doc["elements"] = s.elements;
                              doc["target"] = s.target;
                          },
                          [&](const Graph &g) {
                              doc["vertices"] = g.vertices();
                              json edges = json::array();
                              for (const auto &e : g.edges()) {
                                  edges.push_back({e.u, e.v, e.weight});
                              }
                              doc["edges"] = edges;
                          },
                          [&](const DiagonalHamiltonian &h) {
                              doc["diag"] = std::vector<double>(h.diagonal().begin(),
                                                                h.diagonal().end());
                          }},
               instance.problem());
    if (instance.explicit_target() && instance.type_name() != "subset-sum") {
        doc["target"] = *instance.explicit_target();
    }
    return doc.dump();
}

} // namespace aps
