// Command-line front end: one subcommand per pipeline, machine-readable output.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fourrank/fourrank.hpp"
#include "fourrank/io/reports.hpp"

using namespace fourrank;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_domain = 1;
constexpr int exit_resource = 2;
constexpr int exit_usage = 64;

struct run_config {
    std::int64_t z = -1;
    std::int64_t n = 0;
    std::uint64_t xmax = 0;
    std::int64_t nmin = 2;
    std::int64_t nmax = 0;
    bool all_parities = false;
    bool negative = false;
    bool dual = false;
    bool complement = false;
    bool table = false;
    bool json = false;
    bool identity = false;
    std::vector<std::string> specs;
    std::string audit;
    std::string oracle_csv;
    std::string out_dir;
    unsigned threads = 1;
    std::uint64_t max_trials = class_group_budget{}.max_trials;
};

quadratic_field make_field(const run_config& cfg, bool with_class_group)
{
    quadratic_field K(cfg.z);
    if (with_class_group)
        attach_class_group(K);
    return K;
}

class_group_budget budget_of(const run_config& cfg)
{
    class_group_budget b;
    b.max_trials = cfg.max_trials;
    return b;
}

/// Writes name.csv and name.json into the output directory, if one was given.
void save(const run_config& cfg, const std::string& name, const report::table& t)
{
    if (cfg.out_dir.empty())
        return;
    const std::string base = cfg.out_dir + "/" + name;
    std::ofstream c(base + ".csv"), j(base + ".json");
    if (!c || !j)
        throw resource_error("cannot write " + base + ".csv / .json");
    t.write_csv(c);
    t.write_json(j);
}

void emit(const run_config& cfg, const std::string& name, const report::table& t)
{
    if (cfg.json)
        t.write_json(std::cout);
    else
        t.write_csv(std::cout);
    save(cfg, name, t);
}

int cmd_predict(const run_config& cfg)
{
    const auto K = make_field(cfg, true);
    const int r = predicted_rk4(K, factorize(cfg.n));
    report::table t{{"z", "n", "predicted"}, {{cfg.z, cfg.n, r}}};
    if (cfg.json)
        t.write_json(std::cout);
    else
        std::cout << r << '\n';
    save(cfg, "predict", t);
    return exit_ok;
}

int cmd_candidates(const run_config& cfg)
{
    const auto K = make_field(cfg, false);
    const auto nf = factorize(cfg.n);
    quad_character_set s;
    if (cfg.dual)
        s = cfg.complement ? yn_candidates_dual(K, nf) : candidates(K, nf, selmer_variant::y);
    else
        s = candidates(K, nf, selmer_variant::x);
    auto members = nlohmann::ordered_json::array();
    for (auto d : s.members)
        members.push_back(d);
    report::table t{{"z", "n", "set", "members"}, {{cfg.z, cfg.n, cfg.dual ? "Y" : "X", s.to_string()}}};
    if (cfg.json) {
        nlohmann::ordered_json j{{"z", cfg.z}, {"n", cfg.n}, {"set", cfg.dual ? "Y" : "X"}, {"members", members}};
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << s.to_string() << '\n';
    }
    save(cfg, "candidates", t);
    return exit_ok;
}

int cmd_seldim(const run_config& cfg)
{
    const auto K = make_field(cfg, false);
    const auto nf = factorize(cfg.n);
    if (cfg.table) {
        report::table t{{"place", "kind", "dim"}, {}};
        for (const auto& c : place_dimension_table(K, nf))
            t.rows.push_back({c.v.to_string(), to_string(c.kind), c.dim});
        emit(cfg, "seldim_places", t);
        return exit_ok;
    }
    const int d = sel_dim_formula(K, nf);
    report::table t{{"z", "n", "sel_dim"}, {{cfg.z, cfg.n, d}}};
    if (cfg.json)
        t.write_json(std::cout);
    else
        std::cout << d << '\n';
    save(cfg, "seldim", t);
    return exit_ok;
}

int cmd_classgroup(const run_config& cfg)
{
    const auto budget = budget_of(cfg);
    if (!cfg.audit.empty()) {
        std::ifstream in(cfg.audit);
        if (!in)
            throw domain_error("cannot open " + cfg.audit);
        const auto records = read_class_group_csv(in);
        report::table t{{"field_spec", "disc", "imported", "computed", "status", "match"}, {}};
        int mismatches = 0;
        for (const auto& rec : records) {
            const auto mine = compute_class_group_record(rec.spec, budget);
            const bool match = mine.group == rec.group;
            mismatches += !match;
            t.rows.push_back({rec.spec.to_string(), rec.disc, rec.group.to_string(), mine.group.to_string(),
                              to_string(mine.status), match});
        }
        emit(cfg, "classgroup_audit", t);
        if (mismatches)
            std::cerr << mismatches << " of " << records.size() << " imported groups differ\n";
        return exit_ok;
    }
    if (cfg.specs.empty())
        throw domain_error("classgroup: give --spec or --audit");
    std::vector<class_group_record> rows;
    for (const auto& s : cfg.specs)
        rows.push_back(compute_class_group_record(field_spec::parse(s), budget));
    if (cfg.json) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& r : rows)
            arr.push_back({{"field_spec", r.spec.to_string()},
                           {"disc", r.disc},
                           {"invariant_factors", r.group.invariant_factors()},
                           {"status", to_string(r.status)}});
        std::cout << arr.dump(2) << '\n';
    } else {
        write_class_group_csv(std::cout, rows);
    }
    if (!cfg.out_dir.empty()) {
        std::ofstream c(cfg.out_dir + "/classgroup.csv");
        if (!c)
            throw resource_error("cannot write " + cfg.out_dir + "/classgroup.csv");
        write_class_group_csv(c, rows);
    }
    return exit_ok;
}

/// 100, 1000, ... below xmax, then xmax itself.
std::vector<std::uint64_t> decades(std::uint64_t xmax)
{
    std::vector<std::uint64_t> xs;
    for (std::uint64_t x = 100; x < xmax; x *= 10)
        xs.push_back(x);
    xs.push_back(xmax);
    return xs;
}

int cmd_moments(const run_config& cfg)
{
    const auto K = make_field(cfg, false);
    if (cfg.identity) {
        report::table t{{"X", "variant", "direct", "reparam", "equal"}, {}};
        for (auto v : {selmer_variant::x, selmer_variant::y}) {
            const auto a = xn_sum_direct(K, cfg.xmax, v);
            const auto b = xn_sum_reparam(K, cfg.xmax, v);
            t.rows.push_back({cfg.xmax, to_string(v), a.str(), b.str(), a == b});
        }
        emit(cfg, "moment_identity", t);
        return exit_ok;
    }
    emit(cfg, "moments", report::moments_table(moment_report(K, decades(cfg.xmax), cfg.threads)));
    return exit_ok;
}

int cmd_campaign(const run_config& cfg)
{
    const auto K = make_field(cfg, true);
    sample_spec sample{cfg.nmin, cfg.nmax, !cfg.all_parities, cfg.negative};
    oracle_override external;
    if (!cfg.oracle_csv.empty()) {
        std::ifstream in(cfg.oracle_csv);
        if (!in)
            throw domain_error("cannot open " + cfg.oracle_csv);
        for (auto& rec : read_class_group_csv(in)) {
            if (!rec.spec.n || rec.spec.m != cfg.z)
                throw domain_error("oracle csv: field " + rec.spec.to_string() + " is not of the form " +
                                   std::to_string(cfg.z) + ",n");
            const auto n = *rec.spec.n;
            external.emplace(n, std::move(rec));
        }
    }
    const auto rep = verify_campaign(K, sample, budget_of(cfg), cfg.threads, external.empty() ? nullptr : &external);
    emit(cfg, "campaign", report::campaign_table(rep));
    const auto rate = rep.agreement_rate();
    std::cerr << "generic rows with oracle: " << rep.counted() << ", agreeing: " << rep.agreeing()
              << ", rate: " << (rate ? csv::format_double(*rate) : std::string("n/a"))
              << ", below prediction: " << rep.below_prediction().size() << ", rejected n: " << rep.rejected.size()
              << '\n';
    return exit_ok;
}

int cmd_ek(const run_config& cfg)
{
    const auto K = make_field(cfg, true);
    const auto ek = erdos_kac_report(K, cfg.xmax, default_z_grid(), cfg.threads);
    emit(cfg, "ek", report::ek_table(ek));
    std::cerr << "sup distance: " << csv::format_double(ek.sup_distance) << '\n';
    return exit_ok;
}

int cmd_turan(const run_config& cfg)
{
    const auto K = make_field(cfg, false);
    const auto t = turan_report(K, cfg.xmax);
    report::table tab{{"X", "first", "second", "variance", "reference_first", "reference_second"},
                      {{t.X, t.first, t.second, t.variance(), t.reference_first(), t.reference_second()}}};
    emit(cfg, "turan", tab);
    return exit_ok;
}

} // namespace

int main(int argc, char** argv)
{
    run_config cfg;
    try {
        cfg.threads = default_thread_count();
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }

    CLI::App app{"4-rank predictions, Selmer candidate sets, moment sums and class-group checks for K(sqrt n)"};
    app.require_subcommand(1);
    app.add_option("--threads", cfg.threads, "worker threads (default: FOURRANK_THREADS or hardware)")
        ->check(CLI::Range(1u, 1024u));
    app.add_option("--out-dir", cfg.out_dir, "also write <name>.csv and <name>.json here")
        ->check(CLI::ExistingDirectory);
    app.add_flag("--json", cfg.json, "print JSON instead of CSV/plain text");
    app.add_option("--max-trials", cfg.max_trials, "class-group oracle budget (elements tried)")
        ->check(CLI::PositiveNumber);

    auto field_opt = [&](CLI::App* sub) { sub->add_option("--z", cfg.z, "K = Q(sqrt z)")->required(); };
    auto n_opt = [&](CLI::App* sub) { sub->add_option("--n", cfg.n, "squarefree n")->required(); };
    auto x_opt = [&](CLI::App* sub) {
        sub->add_option("--xmax", cfg.xmax, "range bound X")->required()->check(CLI::PositiveNumber);
    };

    auto* predict = app.add_subcommand("predict", "predicted rk4 Cl(K(sqrt n))");
    field_opt(predict);
    n_opt(predict);

    auto* cands = app.add_subcommand("candidates", "candidate set X~_n (or Y~_n with --dual)");
    field_opt(cands);
    n_opt(cands);
    cands->add_flag("--dual", cfg.dual, "Y~_n instead of X~_n");
    cands->add_flag("--complement", cfg.complement, "with --dual: via the Hilbert pairing against L'_{p,n}");

    auto* seldim = app.add_subcommand("seldim", "dim Sel_chi_n(G_K, Z/2) for generic n");
    field_opt(seldim);
    n_opt(seldim);
    seldim->add_flag("--table", cfg.table, "print the per-place dimensions of L'_{v,n}");

    auto* cg = app.add_subcommand("classgroup", "class group of Q(sqrt m) or Q(sqrt m, sqrt n)");
    cg->add_option("--spec", cfg.specs, "field spec: z or m,n (repeatable)");
    cg->add_option("--audit", cfg.audit, "recompute the groups in a field_spec,disc,invariant_factors,status CSV");

    auto* moments = app.add_subcommand("moments", "sums of |X~_n|, |Y~_n| over squarefree |n| <= X");
    field_opt(moments);
    x_opt(moments);
    moments->add_flag("--identity", cfg.identity, "exact direct and reparametrized indicator sums at X = xmax");

    auto* campaign = app.add_subcommand("campaign", "prediction against the class-group oracle");
    field_opt(campaign);
    campaign->add_option("--nmax", cfg.nmax, "largest |n|")->required();
    campaign->add_option("--nmin", cfg.nmin, "smallest |n| (default 2)");
    campaign->add_flag("--all-parities", cfg.all_parities, "include even n");
    campaign->add_flag("--negative", cfg.negative, "include negative n");
    campaign->add_option("--oracle-csv", cfg.oracle_csv, "class groups of K(sqrt n) to use instead of computing");

    auto* ek = app.add_subcommand("ek", "Erdos-Kac distribution of the predicted rk4");
    field_opt(ek);
    x_opt(ek);

    auto* turan = app.add_subcommand("turan", "mean and second moment of omega_inert");
    field_opt(turan);
    x_opt(turan);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return exit_usage;
    }

    try {
        if (*predict)
            return cmd_predict(cfg);
        if (*cands)
            return cmd_candidates(cfg);
        if (*seldim)
            return cmd_seldim(cfg);
        if (*cg)
            return cmd_classgroup(cfg);
        if (*moments)
            return cmd_moments(cfg);
        if (*campaign)
            return cmd_campaign(cfg);
        if (*ek)
            return cmd_ek(cfg);
        if (*turan)
            return cmd_turan(cfg);
    } catch (const domain_error& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return exit_domain;
    } catch (const state_error& e) {
        std::cerr << "state error: " << e.what() << '\n';
        return exit_domain;
    } catch (const resource_error& e) {
        std::cerr << "resource error: " << e.what() << '\n';
        return exit_resource;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_domain;
    }
    return exit_usage;
}
