#include "bmlab/common.hpp"

#include <cstdlib>
#include <map>
#include <sstream>

namespace bmlab {

Bounds Bounds::parse(const std::string& spec) {
    Bounds b;
    std::map<std::string, int*> slots = {
        {"cycle_edges", &b.cycle_edges},
        {"subdivision_vertices", &b.subdivision_vertices},
        {"subdivision_edges", &b.subdivision_edges},
        {"link_minor_vertices", &b.link_minor_vertices},
        {"link_minor_edges", &b.link_minor_edges},
        {"matroid_elements", &b.matroid_elements},
        {"circuit_elements", &b.circuit_elements},
        {"enum_rank", &b.enum_rank},
        {"enum_elements", &b.enum_elements},
        {"enum_q", &b.enum_q},
        {"canon_nodes", &b.canon_nodes},
    };
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw InvalidArgument("BMLAB_BOUNDS entry without '=': " + item);
        auto key = item.substr(0, eq);
        auto it = slots.find(key);
        if (it == slots.end()) throw InvalidArgument("unknown bound: " + key);
        try {
            *it->second = std::stoi(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw InvalidArgument("bad value for bound " + key);
        }
    }
    if (b.cycle_edges > kMaxEdges || b.subdivision_edges > kMaxEdges ||
        b.link_minor_edges > kMaxEdges)
        throw InvalidArgument("edge bounds cannot exceed 64");
    if (b.matroid_elements > 24 || b.circuit_elements > 24)
        throw InvalidArgument("matroid bounds cannot exceed 24");
    return b;
}

namespace {
Bounds& mutable_bounds() {
    static Bounds b = [] {
        const char* env = std::getenv("BMLAB_BOUNDS");
        return env ? Bounds::parse(env) : Bounds{};
    }();
    return b;
}
}  // namespace

const Bounds& bounds() { return mutable_bounds(); }
void set_bounds(const Bounds& b) { mutable_bounds() = b; }

}  // namespace bmlab
