#include "zdistill/graph.h"

#include <sstream>

namespace zdistill {

namespace {

std::string quoted(const std::string &s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
        }
        out += c;
    }
    return out + "\"";
}

std::string state_node(const std::string &id, uint32_t k, uint32_t n, Origin origin) {
    std::string style = origin == Origin::ancilla ? "\"rounded,dashed\"" : "rounded";
    return "  " + quoted("state:" + id) + " [shape=box, style=" + style + ", label=\"Z_" +
           std::to_string(k) + "(" + std::to_string(n) + ")\", tooltip=" + quoted(id) + "];\n";
}

}  // namespace

std::string plan_to_dot(const ProtocolPlan &plan) {
    std::ostringstream out;
    out << "digraph plan {\n";
    out << "  rankdir=LR;\n";
    out << "  node [fontname=\"Helvetica\"];\n";
    for (const auto &s : plan.inputs) {
        out << state_node(s.id, s.k, s.n, Origin::input);
    }
    for (const auto &s : plan.ancillas) {
        out << state_node(s.id, s.k, s.n, Origin::ancilla);
    }
    for (size_t i = 0; i < plan.cycles.size(); ++i) {
        const Cycle &c = plan.cycles[i];
        std::string projection = quoted("project:" + std::to_string(i));
        out << "  " << projection << " [shape=cds, label=\"consume 2k = " << 2 * plan.k
            << "\"];\n";
        out << state_node(c.produced_id, plan.k, c.left.n + c.right.n - 2 * plan.k,
                          Origin::intermediate);
        for (const StateRef *op : {&c.left, &c.right}) {
            out << "  " << quoted("state:" + op->id) << " -> " << projection << " [label=\"select "
                << plan.k << "\"];\n";
        }
        out << "  " << projection << " -> " << quoted("state:" + c.produced_id) << ";\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace zdistill
