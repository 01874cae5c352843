#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hyperopic/format.hpp"
#include "hyperopic/graph.hpp"
#include "hyperopic/scn.hpp"
#include "hyperopic/solver.hpp"

namespace hyperopic {

struct BoundCheck {
    std::string name;
    long long lhs = 0;
    long long rhs = 0;
    bool holds = false;
    bool equality = false;
    bool skipped = false;  // solver budget ran out before this entry
};

struct GraphFacts {
    int n = 0;
    std::optional<int> diameter;
    bool triangle_free = false;
    bool has_cut_vertex = false;
    bool is_tree = false;
    int c = 0;
    int c_h = 0;
    int upsilon = 0;
};

struct AuditReport {
    GraphFacts facts;
    std::vector<BoundCheck> checks;
    bool pass = true;  // false when any proved inequality fails (bug signal)

    void add(const std::string& name, long long lhs, long long rhs) {
        bool holds = lhs <= rhs;
        checks.push_back({name, lhs, rhs, holds, false, false});
        if (!holds) pass = false;
    }
    void add_equal(const std::string& name, long long lhs, long long rhs) {
        bool holds = lhs == rhs;
        checks.push_back({name, lhs, rhs, holds, true, false});
        if (!holds) pass = false;
    }
    void skip(const std::string& name) { checks.push_back({name, 0, 0, true, false, true}); }
};

namespace detail {

inline GraphFacts facts_of(const Graph& g, const SolveOptions& budget) {
    GraphFacts f;
    f.n = g.order();
    GraphMetrics m = metrics(g);
    f.diameter = m.diameter;
    f.triangle_free = m.is_triangle_free;
    f.has_cut_vertex = !m.cut_vertices.empty();
    f.is_tree = m.is_connected && g.edge_count() == g.order() - 1;
    f.c = cop_number(g, budget);
    f.c_h = hyperopic_cop_number(g, budget);
    f.upsilon = upsilon(g).upsilon;
    return f;
}

}  // namespace detail

// Every proved inequality that applies to this graph, evaluated with exact
// solver values.  A failed check is an implementation-bug signal, never a
// finding about the mathematics.
inline AuditReport audit(const Graph& g, const SolveOptions& budget = {}) {
    if (!is_connected(g)) throw usage_error("audit needs a connected graph");
    AuditReport report;
    try {
        report.facts = detail::facts_of(g, budget);
    } catch (const resource_error&) {
        report.skip("all (solver budget exhausted)");
        return report;
    }
    const GraphFacts& f = report.facts;
    report.add("classic_le_hyperopic", f.c, f.c_h);
    report.add("hyperopic_le_classic_plus_scn", f.c_h, f.c + f.upsilon);
    if (f.diameter && *f.diameter >= 3) report.add("diameter3_bound", f.c_h, f.c + 2);
    if (f.has_cut_vertex) report.add("cut_vertex_bound", f.c_h, f.c + 1);
    if (f.triangle_free) report.add("triangle_free_bound", f.c_h, f.c + 1);
    GraphMetrics m = metrics(g);
    if (!m.universal_vertices.empty()) {
        bool low_degree = false;
        for (Vertex v = 0; v < g.order(); ++v)
            if (g.degree(v) <= 3) low_degree = true;
        if (low_degree) report.add("universal_low_degree_bound", f.c_h, 2);
    }
    report.add_equal("tree_iff_hyperopic_one", f.is_tree ? 1 : 0, f.c_h == 1 ? 1 : 0);
    return report;
}

enum class PairMode { join, cartesian };

struct PairAuditReport {
    GraphFacts left, right;
    AuditReport combined;
};

inline PairAuditReport audit_pair(const Graph& g, const Graph& j, PairMode mode,
                                  const SolveOptions& budget = {}) {
    PairAuditReport out;
    Graph combined = mode == PairMode::join ? join(g, j) : cartesian(g, j);
    out.combined = audit(combined, budget);
    bool g_conn = is_connected(g);
    bool j_conn = is_connected(j);
    out.left.n = g.order();
    out.right.n = j.order();
    out.left.upsilon = upsilon(g).upsilon;
    out.right.upsilon = upsilon(j).upsilon;
    AuditReport& rep = out.combined;
    const GraphFacts& f = rep.facts;

    if (mode == PairMode::join) {
        rep.add("join_scn_sum_bound", f.c_h, out.left.upsilon + out.right.upsilon);
        rep.add("join_scn_subadditive", f.upsilon, out.left.upsilon + out.right.upsilon);
        rep.add("join_diameter", f.diameter.value_or(3), 2);
        int comps_g = static_cast<int>(components(g).size());
        int comps_j = static_cast<int>(components(j).size());
        if (comps_g >= 2 && comps_j >= 2) rep.add("join_two_disconnected", f.c_h, 4);
        if (g_conn && comps_j >= 2) {
            out.left.c_h = hyperopic_cop_number(g, budget);
            rep.add("join_connected_disconnected", f.c_h, out.left.c_h + 2);
        }
        // Minimum small-common-neighbourhood sets that straddle the two
        // sides sharpen the bound by one.
        bool straddling = false;
        VertexSet left_mask = VertexSet::first_n(g.order());
        for (VertexSet s : all_minimum_scn_sets(combined))
            if (!(s & left_mask).empty() && !(s - left_mask).empty()) straddling = true;
        if (straddling)
            rep.add("join_straddling_scn", f.c_h, f.upsilon);
        else
            rep.add("join_one_sided_scn", f.c_h, f.upsilon + 1);
    } else {
        if (g_conn && j_conn) {
            out.left.c = cop_number(g, budget);
            out.right.c = cop_number(j, budget);
            out.left.c_h = hyperopic_cop_number(g, budget);
            out.right.c_h = hyperopic_cop_number(j, budget);
            out.left.diameter = metrics(g).diameter;
            out.right.diameter = metrics(j).diameter;
            if (out.left.diameter.value_or(99) >= 2 || out.right.diameter.value_or(99) >= 2)
                rep.add("cartesian_classic_plus_two", f.c_h, out.left.c + out.right.c + 2);
            rep.add("cartesian_hyperopic_sum", f.c_h, out.left.c_h + out.right.c_h);
            bool g_complete = g.edge_count() == g.order() * (g.order() - 1) / 2;
            bool j_complete = j.edge_count() == j.order() * (j.order() - 1) / 2;
            if (g_complete && j_complete && g.order() >= 2 && j.order() >= 2)
                rep.add("complete_product_four", f.c_h, 4);
            if (f.diameter && out.left.diameter && out.right.diameter)
                rep.add_equal("cartesian_diameter_additive", *f.diameter,
                              *out.left.diameter + *out.right.diameter);
            bool j_path = j.edge_count() == j.order() - 1 && metrics(j).diameter &&
                          *metrics(j).diameter == j.order() - 1;
            if (g_complete && j_path && g.order() >= 2 && j.order() >= 2)
                rep.add_equal("complete_times_path_two", f.c_h, 2);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Empirical scan of the open join questions.  No expected values: rows are
// reported, never asserted, and any violation is a counterexample candidate
// dumped with its certificates.
// ---------------------------------------------------------------------------

struct ConjectureRow {
    std::string left_g6, right_g6;
    int c_h_join = 0;
    int conj1_rhs = 0;  // min(c_H, upsilon) summed over the factors
    int conj2_rhs = 0;  // upsilon of the join
    bool conj1_consistent = true;
    bool conj2_consistent = true;
    std::string certificate;  // winning-policy dump, filled for counterexample candidates
};

inline ConjectureRow scan_pair(const Graph& g, const Graph& j, const SolveOptions& budget = {}) {
    ConjectureRow row;
    row.left_g6 = emit_graph6(g);
    row.right_g6 = emit_graph6(j);
    Graph joined = join(g, j);
    row.c_h_join = hyperopic_cop_number(joined, budget);
    int chg = hyperopic_cop_number(g, budget);
    int chj = hyperopic_cop_number(j, budget);
    int ug = upsilon(g).upsilon;
    int uj = upsilon(j).upsilon;
    row.conj1_rhs = std::min(chg, ug) + std::min(chj, uj);
    row.conj2_rhs = upsilon(joined).upsilon;
    row.conj1_consistent = row.c_h_join <= row.conj1_rhs;
    row.conj2_consistent = row.c_h_join <= row.conj2_rhs;
    if (!row.conj1_consistent || !row.conj2_consistent) {
        SolveOptions with_policy = budget;
        with_policy.want_policy = true;
        row.certificate =
            policy_to_text(solve_hyperopic(joined, row.c_h_join, Objective::capture(), with_policy)
                               .policy);
    }
    return row;
}

// Scans all unordered pairs from a corpus of connected graphs, in corpus
// order.  Output is deterministic for a fixed corpus.
inline std::vector<ConjectureRow> conjecture_scan(const std::vector<Graph>& corpus,
                                                  const SolveOptions& budget = {}) {
    std::vector<ConjectureRow> rows;
    for (std::size_t a = 0; a < corpus.size(); ++a)
        for (std::size_t b = a; b < corpus.size(); ++b)
            rows.push_back(scan_pair(corpus[a], corpus[b], budget));
    return rows;
}

inline std::string conjecture_rows_csv(const std::vector<ConjectureRow>& rows) {
    std::ostringstream out;
    out << "left,right,c_h_join,conj1_rhs,conj2_rhs,conj1,conj2\n";
    for (const ConjectureRow& r : rows)
        out << r.left_g6 << "," << r.right_g6 << "," << r.c_h_join << "," << r.conj1_rhs << ","
            << r.conj2_rhs << "," << (r.conj1_consistent ? "consistent" : "COUNTEREXAMPLE") << ","
            << (r.conj2_consistent ? "consistent" : "COUNTEREXAMPLE") << "\n";
    return out.str();
}

inline std::string audit_report_csv(const AuditReport& r) {
    std::ostringstream out;
    out << "check,lhs,rhs,holds\n";
    for (const BoundCheck& c : r.checks) {
        if (c.skipped)
            out << c.name << ",,,skipped\n";
        else
            out << c.name << "," << c.lhs << "," << c.rhs << "," << (c.holds ? "yes" : "NO") << "\n";
    }
    return out.str();
}

inline std::string audit_report_text(const AuditReport& r) {
    std::ostringstream out;
    out << "n=" << r.facts.n;
    if (r.facts.diameter)
        out << " diameter=" << *r.facts.diameter;
    else
        out << " diameter=inf";
    out << " triangle_free=" << (r.facts.triangle_free ? "yes" : "no")
        << " cut_vertex=" << (r.facts.has_cut_vertex ? "yes" : "no") << " c=" << r.facts.c
        << " c_H=" << r.facts.c_h << " upsilon=" << r.facts.upsilon << "\n";
    for (const BoundCheck& c : r.checks) {
        if (c.skipped) {
            out << "  skip  " << c.name << "\n";
            continue;
        }
        out << "  " << (c.holds ? "ok    " : "FAIL  ") << c.name << " (" << c.lhs
            << (c.equality ? " == " : " <= ") << c.rhs << ")\n";
    }
    out << (r.pass ? "PASS" : "FAIL") << "\n";
    return out.str();
}

}  // namespace hyperopic
