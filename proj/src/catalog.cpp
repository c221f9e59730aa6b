#include "motifscan/catalog.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace motifscan {

namespace {

constexpr std::array<std::string_view, kTriadClassCount> kTriadNames = {
    "003", "012", "102", "021D", "021U", "021C", "111D", "111U",
    "030T", "030C", "201", "120D", "120U", "120C", "210", "300",
};

// Ordered pairs (from, to) for each code bit.
constexpr std::array<std::pair<int, int>, 6> kBitEdges = {{
    {0, 1}, {1, 0}, {0, 2}, {2, 0}, {1, 2}, {2, 1},
}};

constexpr std::array<std::array<std::uint8_t, 3>, 6> kPermutations = {{
    {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0},
}};

bool has(TriadCode code, int from, int to) {
    for (int b = 0; b < 6; ++b) {
        if (kBitEdges[b].first == from && kBitEdges[b].second == to) {
            return (code >> b) & 1U;
        }
    }
    return false;
}

TriadClass derive_class(TriadCode code) {
    int mutual = 0, asym = 0;
    int mutual_i = -1, mutual_j = -1;
    int asym_target = -1;
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            const bool ij = has(code, i, j);
            const bool ji = has(code, j, i);
            if (ij && ji) {
                ++mutual;
                mutual_i = i;
                mutual_j = j;
            } else if (ij || ji) {
                ++asym;
                asym_target = ij ? j : i;
            }
        }
    }
    std::array<int, 3> out{}, in{};
    for (int b = 0; b < 6; ++b) {
        if ((code >> b) & 1U) {
            ++out[kBitEdges[b].first];
            ++in[kBitEdges[b].second];
        }
    }
    const int off_pair = 3 - mutual_i - mutual_j;  // meaningful only with one mutual dyad

    switch (mutual * 10 + asym) {
        case 0: return TriadClass::t003;
        case 1: return TriadClass::t012;
        case 10: return TriadClass::t102;
        case 2:
            if (std::ranges::count(out, 2) > 0) return TriadClass::t021D;
            if (std::ranges::count(in, 2) > 0) return TriadClass::t021U;
            return TriadClass::t021C;
        case 11:
            return (asym_target == mutual_i || asym_target == mutual_j) ? TriadClass::t111D
                                                                       : TriadClass::t111U;
        case 3:
            return std::ranges::count(out, 1) == 3 ? TriadClass::t030C : TriadClass::t030T;
        case 20: return TriadClass::t201;
        case 12:
            // Edges from the off-pair node are its asymmetric ones.
            if (out[off_pair] == 2) return TriadClass::t120D;
            if (in[off_pair] == 2) return TriadClass::t120U;
            return TriadClass::t120C;
        case 21: return TriadClass::t210;
        case 30: return TriadClass::t300;
        default: break;
    }
    throw std::logic_error("unreachable triad configuration");
}

struct Tables {
    std::array<TriadCode, 64> canonical{};
    std::array<std::array<std::uint8_t, 3>, 64> order{};
    std::array<TriadClass, 64> klass{};
    std::array<std::optional<int>, kTriadClassCount> type_of_class{};
    std::array<SubgraphType, kTypeCount> types{};
};

// Catalog order of the connected classes, type ids 3..15.
constexpr std::array<TriadClass, 13> kTriadTypeOrder = {
    TriadClass::t021D, TriadClass::t021U, TriadClass::t021C, TriadClass::t111D,
    TriadClass::t111U, TriadClass::t030T, TriadClass::t030C, TriadClass::t201,
    TriadClass::t120D, TriadClass::t120U, TriadClass::t120C, TriadClass::t210,
    TriadClass::t300,
};

constexpr std::array<std::string_view, 13> kTriadDescriptions = {
    "2-out-star (one guarantor of two borrowers)",
    "2-in-star (two guarantors of one borrower)",
    "guarantee chain",
    "mutual pair receiving an outside guarantee",
    "mutual pair guaranteeing an outside firm",
    "transitive triangle",
    "cyclic triangle",
    "mutual path",
    "outside guarantor of a mutual pair, closed",
    "mutual pair guaranteeing one borrower, closed",
    "mutual pair closing a chain",
    "triangle with two mutual dyads",
    "complete mutual triangle",
};

const Tables& tables() {
    static const Tables t = [] {
        Tables tb;
        for (int c = 0; c < 64; ++c) {
            const auto code = static_cast<TriadCode>(c);
            TriadCode best = 0xFF;
            for (const auto& p : kPermutations) {
                const auto pc = permute_triad_code(code, p);
                if (pc < best) {
                    best = pc;
                    tb.order[c] = p;
                }
            }
            tb.canonical[c] = best;
            tb.klass[c] = derive_class(code);
        }

        tb.types[0] = SubgraphType{1, 2, 0b01, "asym", "single link", std::nullopt, {0, 1, 0}};
        tb.types[1] = SubgraphType{2, 2, 0b11, "mutual", "mutual guarantee", std::nullopt, {0, 0, 0}};
        for (std::size_t i = 0; i < kTriadTypeOrder.size(); ++i) {
            const auto cls = kTriadTypeOrder[i];
            const int type_id = static_cast<int>(i) + 3;
            tb.type_of_class[static_cast<std::size_t>(cls)] = type_id;
            TriadCode canon = 0xFF;
            for (int c = 0; c < 64; ++c) {
                if (tb.klass[c] == cls) canon = std::min(canon, tb.canonical[c]);
            }
            SubgraphType st{type_id, 3, canon, triad_class_name(cls), kTriadDescriptions[i], cls,
                            {0, 1, 2}};
            // Position class = smallest position in its orbit under the automorphisms.
            for (int pos = 0; pos < 3; ++pos) {
                for (const auto& p : kPermutations) {
                    if (permute_triad_code(canon, p) == canon) {
                        st.position_class[pos] = std::min<int>(st.position_class[pos], p[pos]);
                    }
                }
            }
            tb.types[static_cast<std::size_t>(type_id - 1)] = st;
        }
        return tb;
    }();
    return t;
}

}  // namespace

std::string_view triad_class_name(TriadClass c) {
    return kTriadNames[static_cast<std::size_t>(c)];
}

std::vector<int> SubgraphType::position_classes() const {
    std::vector<int> out;
    for (int pos = 0; pos < size; ++pos) {
        if (position_class[pos] == pos) out.push_back(pos);
    }
    return out;
}

std::span<const SubgraphType> catalog() { return tables().types; }

const SubgraphType& subgraph_type(int type_id) {
    if (type_id < 1 || type_id > kTypeCount) {
        throw std::out_of_range("no subgraph type " + std::to_string(type_id));
    }
    return tables().types[static_cast<std::size_t>(type_id - 1)];
}

std::optional<int> type_for_triad_class(TriadClass c) {
    return tables().type_of_class[static_cast<std::size_t>(c)];
}

TriadCode canonical_triad_code(TriadCode code) { return tables().canonical[code & 63U]; }

TriadClass triad_class_of(TriadCode code) { return tables().klass[code & 63U]; }

std::optional<int> classify_triad(TriadCode code) {
    return type_for_triad_class(triad_class_of(code));
}

std::array<std::uint8_t, 3> canonical_triad_order(TriadCode code) {
    return tables().order[code & 63U];
}

TriadCode permute_triad_code(TriadCode code, const std::array<std::uint8_t, 3>& perm) {
    TriadCode out = 0;
    for (int b = 0; b < 6; ++b) {
        const auto [i, j] = kBitEdges[b];
        if (has(code, perm[i], perm[j])) out |= static_cast<TriadCode>(1U << b);
    }
    return out;
}

TriadCode triad_code(const DirectedGraph& g, NodeIndex x0, NodeIndex x1, NodeIndex x2) {
    TriadCode code = 0;
    if (g.has_edge(x0, x1)) code |= 1U;
    if (g.has_edge(x1, x0)) code |= 2U;
    if (g.has_edge(x0, x2)) code |= 4U;
    if (g.has_edge(x2, x0)) code |= 8U;
    if (g.has_edge(x1, x2)) code |= 16U;
    if (g.has_edge(x2, x1)) code |= 32U;
    return code;
}

std::optional<int> classify_dyad(const DirectedGraph& g, NodeIndex u, NodeIndex v) {
    if (u == v) {
        throw std::invalid_argument("dyad needs two distinct nodes");
    }
    const bool uv = g.has_edge(u, v);
    const bool vu = g.has_edge(v, u);
    if (uv && vu) return kMutualDyad;
    if (uv || vu) return kSingleLink;
    return std::nullopt;
}

std::string catalog_json() {
    nlohmann::ordered_json doc;
    doc["catalog_version"] = kCatalogVersion;
    doc["edge_direction"] = "guarantor -> borrower";
    doc["note"] =
        "Order of types 4-7 among {021U, 021C, 111D, 111U} is a fixed convention; "
        "position 0 is the first slot of the canonical (minimum) adjacency code.";
    auto& types = doc["types"] = nlohmann::ordered_json::array();
    for (const auto& t : catalog()) {
        nlohmann::ordered_json e;
        e["type_id"] = t.type_id;
        e["size"] = t.size;
        e["canonical_code"] = t.canonical_code;
        e["census_name"] = std::string(t.census_name);
        e["description"] = std::string(t.description);
        e["position_classes"] = t.position_classes();
        types.push_back(std::move(e));
    }
    return doc.dump(2) + "\n";
}

}  // namespace motifscan
