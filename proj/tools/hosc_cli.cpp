#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "hosc/channel.hpp"
#include "hosc/dts_catalog.hpp"
#include "hosc/dts_search.hpp"
#include "hosc/hamming.hpp"
#include "hosc/simulator.hpp"
#include "hosc/staircase.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;
constexpr int kExitIo = 4;

int default_threads() {
    if (const char* env = std::getenv("HOSC_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return 1;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text, bool append = false) {
    std::ofstream out(path, append ? std::ios::app : std::ios::trunc);
    if (!out) throw std::ios_base::failure("cannot open " + path);
    out << text;
    if (!out) throw std::ios_base::failure("write failed: " + path);
}

struct SpecArgs {
    int L = 1, M = 1, Sp = 4, C = 1;
    std::string dts_file;
    bool from_catalog = false;
    std::string net = "involution";
    std::string perm = "affine";
    std::string spec_json;

    hosc::CodeSpec build() const {
        if (!spec_json.empty()) return hosc::code_spec_from_json(read_file(spec_json));
        hosc::Dts dts;
        if (!dts_file.empty()) {
            dts = hosc::parse_dts_text(read_file(dts_file));
        } else if (from_catalog || M != 1) {
            if (M == 1) {
                for (int l = L; l >= 1; --l) dts.rulers.push_back(hosc::Ruler{0, l});
            } else {
                auto entry = hosc::catalog_lookup(L, M);
                if (!entry)
                    throw std::invalid_argument("no catalog entry for (L=" + std::to_string(L) +
                                                ", M=" + std::to_string(M) + "); pass --dts");
                dts = *entry;
            }
        } else {
            for (int l = L; l >= 1; --l) dts.rulers.push_back(hosc::Ruler{0, l});
        }
        hosc::ComponentSource src;
        src.perm = perm == "natural"   ? hosc::HammingPerm::natural
                   : perm == "boolean" ? hosc::HammingPerm::boolean_fn
                                       : hosc::HammingPerm::affine;
        return hosc::build_spec(L, M, Sp, C, dts, hosc::net_variant_from_string(net), src);
    }

    void attach(CLI::App* cmd) {
        cmd->add_option("--L", L, "coupling width L");
        cmd->add_option("--M", M, "degree parameter M");
        cmd->add_option("--Sp", Sp, "block sidelength S/L");
        cmd->add_option("--C", C, "chained copies C");
        cmd->add_option("--dts", dts_file, "DTS text file (one ruler per line)");
        cmd->add_flag("--catalog", from_catalog, "take the DTS from the built-in catalog");
        cmd->add_option("--net", net, "net family: standard|involution|field|trivial");
        cmd->add_option("--perm", perm, "component permutation: affine|boolean|natural");
        cmd->add_option("--spec", spec_json, "full code spec as JSON (overrides the rest)");
    }
};

void print_construct_report(const hosc::CodeSpec& spec, std::ostream& out) {
    const hosc::MemoryMetrics mm = hosc::memory_metrics(spec);
    out << "parameters: (L, M, S/L, C) = (" << spec.L << ", " << spec.M << ", " << spec.Sp
        << ", " << spec.C << ")\n";
    out << "component: extended Hamming r=" << spec.component.r
        << " length=" << spec.component.length() << " shortening=" << spec.component.shortening
        << "\n";
    out << "rate: " << spec.rate() << "\n";
    out << "encoding memory (bits): " << mm.encode_bits << "\n";
    out << "decoding memory (bits): " << mm.decode_bits << "\n";
    out << "stall bound: " << hosc::stall_bound(spec.M, spec.component.t) << "\n";
    out << "span: " << hosc::span_layout_string(spec) << "\n";
}

hosc::SimConfig sim_config_from_json(const nlohmann::json& j) {
    hosc::SimConfig cfg;
    cfg.W = j.value("W", cfg.W);
    cfg.I = j.value("I", cfg.I);
    cfg.F = j.value("F", cfg.F);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.min_bits = j.value("min_bits", cfg.min_bits);
    cfg.min_errors = j.value("min_errors", cfg.min_errors);
    cfg.max_bits = j.value("max_bits", cfg.max_bits);
    cfg.threads = j.value("threads", default_threads());
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"higher-order staircase code toolkit"};
    app.require_subcommand(1);

    // construct ------------------------------------------------------------
    SpecArgs cons_args;
    int check_scattering_spans = 0;
    auto* cons = app.add_subcommand("construct", "derive and print code parameters");
    cons_args.attach(cons);
    cons->add_option("--check-scattering", check_scattering_spans,
                     "run the brute-force scattering verifier over this many spans");

    // simulate / sweep -------------------------------------------------------
    SpecArgs sim_args;
    std::string config_path, out_path;
    std::vector<double> gaps, epsilons;
    hosc::SimConfig sim_cfg;
    sim_cfg.threads = 0;  // resolved later
    auto add_sim_options = [&](CLI::App* cmd) {
        sim_args.attach(cmd);
        cmd->add_option("--config", config_path, "campaign config JSON");
        cmd->add_option("--gap", gaps, "operating point(s), dB above the hard-decision limit");
        cmd->add_option("--epsilon", epsilons, "operating point(s) as BSC crossover");
        cmd->add_option("--W", sim_cfg.W, "window size in rectangles");
        cmd->add_option("--I", sim_cfg.I, "iterations per window position");
        cmd->add_option("--F", sim_cfg.F, "rectangles per frame");
        cmd->add_option("--seed", sim_cfg.seed, "campaign seed");
        cmd->add_option("--min-bits", sim_cfg.min_bits, "bits to simulate per point");
        cmd->add_option("--min-errors", sim_cfg.min_errors, "bit errors to collect per point");
        cmd->add_option("--max-bits", sim_cfg.max_bits, "hard bit cap per point");
        cmd->add_option("--threads", sim_cfg.threads, "worker count (default HOSC_THREADS)");
        cmd->add_option("--out", out_path, "CSV output path (default stdout)");
    };
    auto* simulate = app.add_subcommand("simulate", "simulate one operating point");
    add_sim_options(simulate);
    auto* sweep = app.add_subcommand("sweep", "simulate a sweep of operating points");
    add_sim_options(sweep);

    // dts ------------------------------------------------------------------
    auto* dts = app.add_subcommand("dts", "difference triangle set tools");
    dts->require_subcommand(1);

    hosc::SearchParams search_params;
    std::string search_objective = "scope", search_out;
    auto* dsearch = dts->add_subcommand("search", "stochastic DTS search");
    dsearch->add_option("--L", search_params.L)->required();
    dsearch->add_option("--M", search_params.M)->required();
    dsearch->add_option("--scope", search_params.max_scope, "maximum admissible scope")
        ->required();
    dsearch->add_option("--objective", search_objective, "scope|scope_then_sum");
    dsearch->add_option("--seed", search_params.seed);
    dsearch->add_option("--threads", search_params.threads, "worker count (default HOSC_THREADS)")
        ->default_val(0);
    dsearch->add_option("--budget", search_params.budget, "insertion attempts");
    dsearch->add_option("--attempts", search_params.attempts_per_mark,
                        "failures before a mark deletion");
    dsearch->add_option("--deletions", search_params.deletions_per_ruler,
                        "mark deletions before a ruler deletion");
    dsearch->add_option("--out", search_out, "append the result to this DTS file");

    std::string verify_file;
    bool verify_catalog_flag = false;
    auto* dverify = dts->add_subcommand("verify", "validate a DTS file against the bounds");
    dverify->add_option("file", verify_file, "DTS text file");
    dverify->add_flag("--catalog", verify_catalog_flag, "revalidate every embedded table");

    int cat_L = 0, cat_M = 0;
    auto* dcatalog = dts->add_subcommand("catalog", "print a catalog entry");
    dcatalog->add_option("L", cat_L)->required();
    dcatalog->add_option("M", cat_M)->required();

    std::string comb_a, comb_b, comb_out;
    auto* dcombine = dts->add_subcommand("combine", "combine two perfect DTS files");
    dcombine->add_option("fileA", comb_a)->required();
    dcombine->add_option("fileB", comb_b)->required();
    dcombine->add_option("--out", comb_out, "output path (default stdout)");

    int b_L = 0, b_M = 0;
    auto* dbounds = dts->add_subcommand("bounds", "print the (scope, sum) lower bounds");
    dbounds->add_option("L", b_L)->required();
    dbounds->add_option("M", b_M)->required();

    // hamming ----------------------------------------------------------------
    auto* ham = app.add_subcommand("hamming", "component code tools");
    ham->require_subcommand(1);
    int fp_r = 0;
    auto* hfind = ham->add_subcommand("find-perm", "search a systematizing affine pair");
    hfind->add_option("--r", fp_r, "parity bit count r")->required();
    auto* hverify = ham->add_subcommand("verify-tables", "check the embedded permutation tables");
    int dump_r = 0, dump_short = 0;
    std::string dump_perm = "affine";
    auto* hdump = ham->add_subcommand("dump-columns", "CSV of j, tau(j), column_hex");
    hdump->add_option("--r", dump_r)->required();
    hdump->add_option("--perm", dump_perm, "affine|boolean|natural");
    hdump->add_option("--shortening", dump_short);

    // gap ----------------------------------------------------------------------
    auto* gap = app.add_subcommand("gap", "hard-decision Shannon limit conversions");
    gap->require_subcommand(1);
    double g_gap = 0, g_eps = 0, g_rate = 0;
    auto* g2e = gap->add_subcommand("to-epsilon", "gap (dB) to BSC crossover");
    g2e->add_option("--gap", g_gap)->required();
    g2e->add_option("--rate", g_rate)->required();
    auto* e2g = gap->add_subcommand("to-db", "BSC crossover to gap (dB)");
    e2g->add_option("--epsilon", g_eps)->required();
    e2g->add_option("--rate", g_rate)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (cons->parsed()) {
            const hosc::CodeSpec spec = cons_args.build();
            print_construct_report(spec, std::cout);
            if (check_scattering_spans > 0) {
                const bool ok = hosc::check_scattering(spec, check_scattering_spans);
                std::cout << "scattering: " << (ok ? "PASS" : "FAIL") << "\n";
                if (!ok) return kExitValidation;
            }
        } else if (simulate->parsed() || sweep->parsed()) {
            hosc::CodeSpec spec = sim_args.build();
            hosc::SimConfig cfg = sim_cfg;
            std::vector<hosc::SweepPoint> points;
            if (!config_path.empty()) {
                const nlohmann::json j = nlohmann::json::parse(read_file(config_path));
                if (j.contains("spec")) spec = hosc::code_spec_from_json(j.at("spec").dump());
                cfg = sim_config_from_json(j.value("sim", nlohmann::json::object()));
                for (const auto& g : j.value("gaps", nlohmann::json::array()))
                    gaps.push_back(g.get<double>());
                for (const auto& e : j.value("epsilons", nlohmann::json::array()))
                    epsilons.push_back(e.get<double>());
                if (j.contains("out") && out_path.empty()) out_path = j.at("out").get<std::string>();
            }
            if (cfg.threads <= 0) cfg.threads = default_threads();
            const double R = spec.rate();
            for (double g : gaps) points.push_back({g, hosc::gap_to_epsilon(g, R)});
            for (double e : epsilons) points.push_back({hosc::epsilon_to_gap(e, R), e});
            if (points.empty()) throw std::invalid_argument("no operating points given");
            if (simulate->parsed() && points.size() != 1)
                throw std::invalid_argument("simulate takes one operating point; use sweep");
            std::cerr << "simulating " << points.size() << " point(s), threads=" << cfg.threads
                      << "\n";
            const hosc::SimReport rep = hosc::run_campaign(spec, points, cfg);
            if (out_path.empty())
                std::cout << rep.csv();
            else
                write_file(out_path, rep.csv());
        } else if (dsearch->parsed()) {
            if (search_params.threads <= 0) search_params.threads = default_threads();
            search_params.objective = search_objective == "scope_then_sum"
                                          ? hosc::SearchObjective::scope_then_sum
                                          : hosc::SearchObjective::scope;
            const auto found = hosc::search_dts_with_model_pipeline(search_params);
            if (!found) {
                std::cerr << "no DTS found within budget\n";
                return kExitValidation;
            }
            std::ostringstream out;
            out << "# (" << search_params.L << "," << search_params.M << ")-DTS scope "
                << hosc::scope(*found) << " sum " << hosc::sum_of_lengths(*found) << " seed "
                << search_params.seed << " objective " << search_objective << "\n"
                << hosc::format_dts_text(hosc::sorted_descending_by_length(*found));
            if (search_out.empty())
                std::cout << out.str();
            else
                write_file(search_out, out.str(), /*append=*/true);
        } else if (dverify->parsed()) {
            if (verify_catalog_flag) {
                const hosc::CatalogVerification v = hosc::verify_catalog();
                for (const auto& m : v.messages) std::cerr << m << "\n";
                std::cout << (v.ok() ? "PASS" : "FAIL") << " (" << v.entries << " entries)\n";
                if (!v.ok()) return kExitValidation;
            } else {
                if (verify_file.empty()) throw std::invalid_argument("need a file or --catalog");
                const hosc::Dts d = hosc::parse_dts_text(read_file(verify_file));
                const bool ok = hosc::is_dts(d);
                std::cout << (ok ? "PASS" : "FAIL") << " L=" << d.L() << " M=" << d.M()
                          << " scope=" << hosc::scope(d) << " sum=" << hosc::sum_of_lengths(d);
                if (ok && d.M() >= 1 && d.M() <= 4) {
                    const hosc::BoundPair b = hosc::lower_bounds(d.L(), d.M());
                    std::cout << " scope_lb=" << b.scope_lb << " sum_lb=" << b.sum_lb
                              << (hosc::scope(d) == b.scope_lb ? " scope_optimal" : "")
                              << (hosc::sum_of_lengths(d) == b.sum_lb ? " sum_optimal" : "");
                }
                std::cout << "\n";
                if (!ok) return kExitValidation;
            }
        } else if (dcatalog->parsed()) {
            const auto entry = hosc::catalog_lookup(cat_L, cat_M);
            if (!entry) {
                std::cerr << "no catalog entry for (" << cat_L << ", " << cat_M << ")\n";
                return kExitValidation;
            }
            std::cout << hosc::format_dts_text(*entry);
            if (const auto twin = hosc::catalog_pareto_alternate(cat_L, cat_M)) {
                std::cout << "# Pareto alternate (minimum sum-of-lengths):\n"
                          << hosc::format_dts_text(*twin);
            }
        } else if (dcombine->parsed()) {
            const hosc::Dts a = hosc::parse_dts_text(read_file(comb_a));
            const hosc::Dts b = hosc::parse_dts_text(read_file(comb_b));
            const hosc::Dts z = hosc::combine(a, b);
            std::ostringstream out;
            out << "# combined (" << z.L() << "," << z.M() << ")-DTS scope " << hosc::scope(z)
                << " sum " << hosc::sum_of_lengths(z) << "\n"
                << hosc::format_dts_text(z);
            if (comb_out.empty())
                std::cout << out.str();
            else
                write_file(comb_out, out.str());
        } else if (dbounds->parsed()) {
            const hosc::BoundPair b = hosc::lower_bounds(b_L, b_M);
            std::cout << b.scope_lb << " " << b.sum_lb << "\n";
        } else if (hfind->parsed()) {
            const auto [a, b] = hosc::find_affine(fp_r);
            std::cout << "r-1=" << (fp_r - 1) << " a=" << a << " b=" << b << "\n";
        } else if (hverify->parsed()) {
            bool ok = true;
            for (int rm1 = 3; rm1 <= 16; ++rm1) {
                if (!hosc::systematize_check(hosc::affine_spec(rm1 + 1))) {
                    std::cerr << "affine r-1=" << rm1 << " FAIL\n";
                    ok = false;
                }
                if (!hosc::systematize_check(hosc::boolean_spec(rm1 + 1))) {
                    std::cerr << "boolean r-1=" << rm1 << " FAIL\n";
                    ok = false;
                }
            }
            std::cout << (ok ? "PASS" : "FAIL") << " (affine + boolean, r-1 in 3..16)\n";
            if (!ok) return kExitValidation;
        } else if (hdump->parsed()) {
            hosc::ExtHammingSpec spec =
                dump_perm == "boolean"   ? hosc::boolean_spec(dump_r, dump_short)
                : dump_perm == "natural" ? hosc::natural_spec(dump_r, dump_short)
                                         : hosc::affine_spec(dump_r, dump_short);
            std::cout << "j,tau,column_hex\n";
            for (int j = 0; j < spec.length(); ++j)
                std::cout << j << ',' << hosc::tau(spec, j) << ",0x" << std::hex
                          << hosc::column(spec, j) << std::dec << '\n';
        } else if (g2e->parsed()) {
            std::cout << hosc::gap_to_epsilon(g_gap, g_rate) << "\n";
        } else if (e2g->parsed()) {
            std::cout << hosc::epsilon_to_gap(g_eps, g_rate) << "\n";
        }
    } catch (const std::ios_base::failure& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return 0;
}
