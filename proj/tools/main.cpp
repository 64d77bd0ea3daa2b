// collatz-spiral: command-line front end for the spiral reformulation of the
// 3n+1 dynamic. Exit codes: 0 success, 1 verification failure, 2 usage error.

#include "collatz/collatz.hpp"
#include "collatz/io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

using namespace collatz;

namespace {

unsigned default_jobs() {
    if (const char* env = std::getenv("COLLATZ_SPIRAL_JOBS")) {
        int j = std::atoi(env);
        if (j >= 1) return unsigned(j);
    }
    return 1;
}

std::vector<int> parse_chain(const std::string& spec, bool right_to_left) {
    std::vector<int> indices;
    std::string tok;
    std::istringstream is(spec);
    while (std::getline(is, tok, ',')) {
        if (tok.empty()) continue;
        if (tok[0] == 'f') tok = tok.substr(1);
        int k = std::stoi(tok);
        if (k == 0) throw CLI::ValidationError("--chain", "family index 0 is invalid");
        indices.push_back(k);
    }
    if (indices.empty()) throw CLI::ValidationError("--chain", "empty chain");
    if (right_to_left) std::reverse(indices.begin(), indices.end());
    return indices;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spiral reformulation of the 3n+1 dynamic: sequences, the "
                 "6x+-1 spiral, the Diophantine step family, trajectory "
                 "equivalence, composition algebra and the predecessor tree."};
    app.require_subcommand(1);
    unsigned jobs = default_jobs();
    std::uint64_t budget = kDefaultBudget;

    // seq
    auto* seq = app.add_subcommand("seq", "Emit one of the three base sequences");
    std::string seq_name = "a329480";
    long long seq_max = 50;
    bool seq_levels = false;
    std::string seq_format = "csv";
    seq->add_option("--name", seq_name)->check(CLI::IsMember({"a016789", "a075677", "a329480"}));
    seq->add_option("--max", seq_max)->check(CLI::PositiveNumber);
    seq->add_flag("--levels", seq_levels, "also emit level boundaries");
    seq->add_option("--format", seq_format)->check(CLI::IsMember({"csv", "json"}));

    // spiral-export
    auto* spx = app.add_subcommand("spiral-export", "Polar data for the spiral and its rays");
    long long spx_nmax = 42;
    std::string spx_format = "csv";
    spx->add_option("--n-max", spx_nmax)->check(CLI::PositiveNumber);
    spx->add_option("--format", spx_format)->check(CLI::IsMember({"csv", "json", "svg"}));

    // step
    auto* step = app.add_subcommand("step", "Single-step family operations");
    step->require_subcommand(1);
    auto* st_classify = step->add_subcommand("classify", "Owning family index of a spiral value");
    long long st_x = 0;
    st_classify->add_option("x", st_x)->required();
    auto* st_apply = step->add_subcommand("apply", "Apply f_k to a spiral value");
    int st_k = 1;
    long long st_ax = 0;
    st_apply->add_option("k", st_k)->required();
    st_apply->add_option("x", st_ax)->required();
    auto* st_table = step->add_subcommand("table", "Family table as CSV");
    unsigned st_kmax = 13;
    st_table->add_option("--kmax", st_kmax)->check(CLI::PositiveNumber);
    auto* st_jac = step->add_subcommand("jacobsthal", "Constant numerators c_k");
    unsigned st_jmax = 13;
    st_jac->add_option("--kmax", st_jmax)->check(CLI::PositiveNumber);

    // jacobsthal (top-level alias)
    auto* jac = app.add_subcommand("jacobsthal", "Constant numerators c_k");
    unsigned jac_kmax = 13;
    jac->add_option("--kmax", jac_kmax)->check(CLI::PositiveNumber);

    // trajectory
    auto* traj = app.add_subcommand("trajectory", "Spiral and odd-Collatz trajectory of n");
    long long traj_n = 0;
    traj->add_option("n", traj_n)->required()->check(CLI::PositiveNumber);
    traj->add_option("--budget", budget);

    // verify
    auto* ver = app.add_subcommand("verify", "Trajectory-equivalence sweep");
    long long ver_max = 1000000;
    ver->add_option("--max", ver_max)->check(CLI::PositiveNumber);
    ver->add_option("--jobs", jobs)->check(CLI::PositiveNumber);
    ver->add_option("--budget", budget);

    // table
    auto* tab = app.add_subcommand("table", "Collatz iterate table for 6x+1 rows");
    unsigned tab_xmax = 22, tab_imax = 9;
    tab->add_option("--xmax", tab_xmax)->check(CLI::PositiveNumber);
    tab->add_option("--imax", tab_imax)->check(CLI::PositiveNumber);

    // compose
    auto* comp = app.add_subcommand("compose", "Compose a chain of family steps");
    std::string comp_chain;
    bool comp_rtl = false;
    comp->add_option("--chain", comp_chain, "e.g. f2,f-2,f-1 in application order")->required();
    comp->add_flag("--right-to-left", comp_rtl,
                   "read the chain right-to-left (composition notation)");

    // search-cat2
    auto* search = app.add_subcommand(
        "search-cat2", "Exhaustive bounded hunt for Category-2 composites and in-domain fixed points");
    unsigned search_depth = 12;
    unsigned search_sumk = 0;
    bool no_prune = false;
    search->add_option("--depth", search_depth)->check(CLI::PositiveNumber);
    search->add_option("--sum-k", search_sumk, "total-halvings budget (default 2*depth+6)");
    search->add_flag("--no-prune", no_prune,
                     "kept for auditability; the search is always unpruned");
    search->add_option("--jobs", jobs)->check(CLI::PositiveNumber);

    // lines
    auto* lines = app.add_subcommand("lines", "Slope/intercept data of the family lines");
    unsigned lines_kmax = 13;
    lines->add_option("--kmax", lines_kmax)->check(CLI::PositiveNumber);

    // tree
    auto* tree = app.add_subcommand("tree", "Predecessor tree slice rooted at 0");
    unsigned tree_radius = 3;
    std::string tree_format = "text";
    tree->add_option("--radius", tree_radius)->check(CLI::PositiveNumber);
    tree->add_option("--format", tree_format)->check(CLI::IsMember({"dot", "csv", "json", "text"}));
    tree->add_option("--budget", budget);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        if (*seq) {
            if (seq_format == "json") io::sequence_json(seq_name, seq_max, std::cout);
            else io::sequence_csv(seq_name, seq_max, seq_levels, std::cout);
        } else if (*spx) {
            if (spx_format == "svg") io::polar_svg(spx_nmax, std::cout);
            else if (spx_format == "json") io::polar_json(spx_nmax, std::cout);
            else io::polar_csv(spx_nmax, std::cout);
        } else if (*st_classify) {
            std::cout << classify(Int(st_x)) << '\n';
        } else if (*st_apply) {
            std::cout << step_apply(st_k, Int(st_ax)) << '\n';
        } else if (*st_table) {
            io::step_table_csv(st_kmax, std::cout);
        } else if (*st_jac) {
            io::jacobsthal_csv(st_jmax, std::cout);
        } else if (*jac) {
            io::jacobsthal_csv(jac_kmax, std::cout);
        } else if (*traj) {
            Int n(traj_n);
            // Odd multiples of 3 have no spiral representation; walk the
            // Collatz dynamic forward until a 6x+-1 value appears.
            while (n % 2 == 0 || n % 3 == 0) n = collatz_step(n);
            if (n != traj_n) std::cout << "pre-walk: " << traj_n << " -> " << n << '\n';
            auto st = spiral_trajectory(spiral_encode(n), budget);
            std::cout << "spiral:";
            for (const Int& v : st.steps) std::cout << ' ' << v;
            std::cout << (st.reached_zero ? "" : " (budget exhausted)") << '\n';
            std::cout << "odd collatz:";
            for (const Int& v : odd_trajectory(n, budget)) std::cout << ' ' << v;
            std::cout << '\n';
        } else if (*ver) {
            auto res = verify_equivalence_range(ver_max, jobs, budget);
            std::cout << "checked=" << res.checked << " failed=" << res.failed << '\n';
            for (auto n : res.failures) std::cout << "mismatch at n=" << n << '\n';
            return res.failed == 0 ? 0 : 1;
        } else if (*tab) {
            io::iterates_csv(tab_xmax, tab_imax, std::cout);
        } else if (*comp) {
            auto c = make_chain(parse_chain(comp_chain, comp_rtl));
            io::chain_report(c, std::cout);
        } else if (*search) {
            SearchLimits limits;
            limits.max_depth = search_depth;
            limits.max_sum_k = search_sumk ? search_sumk : 2 * search_depth + 6;
            limits.jobs = jobs;
            auto report = search_category2(limits);
            std::cout << "chains visited: " << report.chains_visited
                      << " (depth <= " << limits.max_depth
                      << ", total halvings <= " << limits.max_sum_k << ")\n";
            for (const auto& w : report.category2) {
                std::cout << "CATEGORY-2 WITNESS\n";
                io::chain_report(w.chain, std::cout);
            }
            for (const auto& w : report.fixed_points) {
                std::cout << "FIXED-POINT WITNESS x=" << w.fixed_point_value << '\n';
                io::chain_report(w.chain, std::cout);
            }
            if (report.category2.empty() && report.fixed_points.empty()) {
                std::cout << "no Category-2 composite and no in-domain fixed point "
                             "within the bounds\n";
                std::cout << "checked=" << report.chains_visited << " failed=0\n";
                return 0;
            }
            std::cout << "checked=" << report.chains_visited << " failed="
                      << report.category2.size() + report.fixed_points.size() << '\n';
            return 1;
        } else if (*lines) {
            io::lines_csv(lines_kmax, std::cout);
        } else if (*tree) {
            auto t = build_tree(tree_radius, budget);
            if (tree_format == "dot") io::tree_dot(t, std::cout);
            else if (tree_format == "csv") io::tree_csv(t, std::cout);
            else if (tree_format == "json") io::tree_json(t, std::cout);
            else {
                for (const auto& e : t.edges)
                    std::cout << e.child << " -> " << e.parent << '\n';
                std::cout << (t.all_reach_zero ? "all chains reach 0"
                                               : "some chain did not reach 0 in budget")
                          << '\n';
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
