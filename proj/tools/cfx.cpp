// cfx — continued-fraction interval maps, planar extensions, and their comparison.
//
// Subcommands: ctx, orbit, domain, areas, compare, induction.
// CSV output: header row, comma separated, LF newlines, 17 significant digits.
// Exit codes: 0 ok, 1 parameter error, 2 verification failure.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>

#include "CLI11.hpp"
#include "cfx/analysis.hpp"
#include "cfx/csv.hpp"

using namespace cfx;

namespace {

std::uint64_t seed_from_env(std::uint64_t fallback) {
    if (const char* s = std::getenv("CFX_SEED")) return std::strtoull(s, nullptr, 10);
    return fallback;
}

void print_kv(std::ostream& os, bool csv, const std::string& k, const std::string& v) {
    if (csv)
        os << k << "," << v << "\n";
    else
        os << std::left << std::setw(12) << k << " " << v << "\n";
}

int cmd_ctx(int q, bool csv) {
    const GroupContext ctx = make_context(q);
    std::ostream& os = std::cout;
    if (csv) os << "name,value\n";
    print_kv(os, csv, "q", std::to_string(ctx.q));
    print_kv(os, csv, "n", std::to_string(ctx.n));
    print_kv(os, csv, "lambda", fmt17(ctx.lambda));
    print_kv(os, csv, "mu", fmt17(ctx.mu));
    print_kv(os, csv, "alpha", fmt17(ctx.alpha));
    print_kv(os, csv, "gamma", fmt17(ctx.gamma));
    print_kv(os, csv, "Q.1", fmt17(ctx.q1));
    print_kv(os, csv, "rho", fmt17(rho(ctx)));
    print_kv(os, csv, "J_lo", fmt17(ctx.J.lo));
    print_kv(os, csv, "J_hi", fmt17(ctx.J.hi));
    print_kv(os, csv, "I_lo", fmt17(ctx.I.lo));
    print_kv(os, csv, "I_hi", fmt17(ctx.I.hi));
    for (int j = 0; j < ctx.n; ++j) print_kv(os, csv, "phi_" + std::to_string(j), fmt17(ctx.phi[j]));
    for (int j = 0; j <= ctx.n - 2; ++j)
        print_kv(os, csv, "delta_" + std::to_string(j), fmt17(ctx.delta[j]));
    for (int j = 1; j <= ctx.n; ++j) print_kv(os, csv, "d_" + std::to_string(j), fmt17(ctx.d[j - 1]));
    for (int j = 1; j <= ctx.n - 1; ++j)
        print_kv(os, csv, "c_" + std::to_string(j), fmt17(ctx.c[j - 1]));
    return 0;
}

int cmd_orbit(const std::string& map, int q, double x, double y, long long n, bool planar,
              const std::string& out_path) {
    const GroupContext ctx = make_context(q);
    const MapId id = map_from_letter(map);
    std::ofstream out(out_path);
    if (!out) fail(ErrorKind::Parameter, "cannot open output file " + out_path);

    if (!planar) {
        const OrbitResult orb = orbit(ctx, id, x, static_cast<std::size_t>(n));
        out << "step,x,digit,tau\n";
        double xi = x;
        for (std::size_t i = 0; i < orb.steps.size(); ++i) {
            const StepResult& s = orb.steps[i];
            out << i << "," << fmt17(xi) << "," << digit_string(s.digit) << "," << fmt17(s.tau)
                << "\n";
            xi = s.image;
        }
        if (orb.terminated) out << "# terminated: " << orb.message << "\n";
    } else {
        out << "step,x,y,digit,tau\n";
        PlanarPoint p{x, y};
        for (long long i = 0; i < n; ++i) {
            StepResult s;
            try {
                s = step(ctx, id, p.x);
            } catch (const Error& e) {
                out << "# terminated: " << e.what() << "\n";
                break;
            }
            out << i << "," << fmt17(p.x) << "," << fmt17(p.y) << "," << digit_string(s.digit)
                << "," << fmt17(s.tau) << "\n";
            PlanarPoint next = planar_apply(s.matrix, p);
            next.x = s.image;
            p = next;
        }
    }
    return 0;
}

MapId own_map(DomainId id) {
    switch (id) {
        case DomainId::ERosenSym: return MapId::RosenSym;
        case DomainId::OmegaAdd: return MapId::VeechAdditive;
        case DomainId::OmegaVeech: return MapId::VeechMultiplicative;
        case DomainId::OmegaR: return MapId::DoubledRosen;
        case DomainId::OmegaBar:
            fail(ErrorKind::Parameter, "omega_bar has no associated map; pass --map");
    }
    fail(ErrorKind::Parameter, "unknown domain");
}

int cmd_domain(const std::string& which, int q, bool arcs, bool do_verify, long long samples,
               double tol, std::uint64_t seed, const std::string& map_override, double max_escape) {
    const GroupContext ctx = make_context(q);
    const DomainId wid = domain_from_name(which);
    const Domain d = build_domain(ctx, wid);
    if (arcs) write_arcs(std::cout, d);
    if (!do_verify) {
        if (!arcs) {
            std::cout << "domain " << d.name << " over [" << fmt17(d.x_lo) << ", " << fmt17(d.x_hi)
                      << "], " << d.upper.size() << "+" << d.lower.size() << " arcs\n";
            try {
                std::cout << "analytic area " << fmt17(area_analytic(d)) << "\n";
            } catch (const Error& e) {
                std::cout << "analytic area unavailable (" << e.what() << ")\n";
            }
        }
        return 0;
    }
    const MapId mid = map_override.empty() ? own_map(wid) : map_from_letter(map_override);
    const InvarianceReport rep =
        verify_invariance(ctx, d, mid, static_cast<std::size_t>(samples), tol, seed);
    std::cout << "samples,seed,forward_escape_fraction,forward_shell,backward_escape_fraction,"
                 "backward_shell,collisions\n";
    std::cout << rep.samples << "," << rep.seed << "," << fmt17(rep.forward_escape_fraction())
              << "," << rep.forward_shell << "," << fmt17(rep.backward_escape_fraction()) << ","
              << rep.backward_shell << "," << rep.collisions << "\n";
    const bool ok = rep.forward_escape_fraction() <= max_escape &&
                    rep.backward_escape_fraction() <= max_escape && rep.collisions == 0;
    return ok ? 0 : 2;
}

int cmd_areas(int q) {
    const GroupContext ctx = make_context(q);
    std::cout << "domain,closed_form,analytic,abs_diff\n";
    double worst = 0.0;
    for (DomainId id : {DomainId::ERosenSym, DomainId::OmegaAdd, DomainId::OmegaVeech,
                        DomainId::OmegaR, DomainId::OmegaBar}) {
        std::string closed = "n/a", analytic = "n/a", diff = "n/a";
        double cf = 0.0;
        bool have_cf = false;
        try {
            cf = area_closed_form(ctx, id);
            closed = fmt17(cf);
            have_cf = true;
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::InfiniteArea) closed = "inf";
            if (e.kind() == ErrorKind::UnsupportedQ) continue;
        }
        try {
            const Domain d = build_domain(ctx, id);
            const double av = area_analytic(d);
            analytic = fmt17(av);
            if (have_cf) {
                const double dd = std::abs(av - cf);
                diff = fmt17(dd);
                worst = std::max(worst, dd);
            }
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::InfiniteArea) analytic = "inf";
        }
        std::cout << domain_name(id) << "," << closed << "," << analytic << "," << diff << "\n";
    }
    if (q >= 8) {
        const double bar = area_closed_form(ctx, DomainId::OmegaBar);
        const double cv = area_closed_form(ctx, DomainId::OmegaVeech);
        const double cr = area_closed_form(ctx, DomainId::OmegaR);
        // The two ratios have limits 1/3 and 0 as q grows.
        std::cout << "ratio_intersection_over_c_v," << fmt17(bar / cv) << "\n";
        std::cout << "ratio_intersection_over_c_r," << fmt17(bar / cr) << "\n";
    }
    return worst <= 1e-10 ? 0 : 2;
}

int cmd_compare(int q, long long starts, std::uint64_t seed, long long max_iters, double tol,
                double min_agreement) {
    const GroupContext ctx = make_context(q);
    const Domain bar = build_domain(ctx, DomainId::OmegaBar);
    const DomainSampler sampler(bar);
    std::vector<PlanarPoint> pts;
    pts.reserve(static_cast<std::size_t>(starts));
    for (long long i = 0; i < starts; ++i) {
        SplitMix64 rng(mix_seed(seed, static_cast<std::uint64_t>(i)));
        pts.push_back(sampler.sample(rng));
    }
    const ComparisonReport rep =
        compare_first_returns(ctx, pts, static_cast<std::size_t>(max_iters), tol);
    std::cout << "start_x,start_y,r_steps,r_x,r_y,v_steps,v_x,v_y,status\n";
    for (const ReturnRecord& r : rep.records) {
        std::cout << fmt17(r.start.x) << "," << fmt17(r.start.y) << ",";
        if (r.r_ok)
            std::cout << r.r_steps << "," << fmt17(r.r_return.x) << "," << fmt17(r.r_return.y);
        else
            std::cout << ",,";
        std::cout << ",";
        if (r.v_ok)
            std::cout << r.v_steps << "," << fmt17(r.v_return.x) << "," << fmt17(r.v_return.y);
        else
            std::cout << ",,";
        const char* status = r.shell                ? "shell"
                             : !r.r_ok || !r.v_ok   ? "noreturn"
                             : r.agree              ? "agree"
                                                    : "disagree";
        std::cout << "," << status << "\n";
    }
    std::cout << "# agreements=" << rep.agreements << " disagreements=" << rep.disagreements
              << " shell_or_failed=" << rep.shell_or_failed << " rate=" << rep.agreement_rate()
              << "\n";
    return rep.agreement_rate() >= min_agreement ? 0 : 2;
}

int cmd_induction(int q, int k_max, long long samples, std::uint64_t seed) {
    const GroupContext ctx = make_context(q);
    const auto rows = slow_return_experiment(ctx, k_max, static_cast<std::size_t>(samples), seed);
    std::cout << "k,x_lo,x_hi,samples,min_index,pass\n";
    bool all = true;
    for (const SlowReturnRow& r : rows) {
        std::cout << r.k << "," << fmt17(r.x_lo) << "," << fmt17(r.x_hi) << "," << r.samples << ","
                  << r.min_index << "," << (r.pass ? "true" : "false") << "\n";
        all = all && r.pass;
    }
    return all ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Symmetrized Rosen and Veech continued-fraction maps, their planar "
                 "natural-extension models, and quantitative comparisons"};
    app.require_subcommand(1);

    int q = 8;
    std::string map_arg = "h", which = "omega_v", out_path, map_override;
    double x = 0.0, y = 0.0, tol = kDefaultTol, cmp_tol = 1e-7, max_escape = 1e-4,
           min_agreement = 0.999;
    long long n = 1000, samples = 100000, starts = 1000, max_iters = 100000, ind_samples = 100;
    std::uint64_t seed = 1;
    int k_max = 5;
    bool csv = false, planar = false, arcs = false, do_verify = false;

    auto* c_ctx = app.add_subcommand("ctx", "print the constant table for q");
    c_ctx->add_option("--q", q, "even integer >= 6")->required();
    c_ctx->add_flag("--csv", csv, "emit name,value CSV");

    auto* c_orbit =
        app.add_subcommand("orbit", "orbit CSV of an interval map or its planar extension");
    c_orbit->add_option("--map", map_arg, "one of f h k r a v")->required();
    c_orbit->add_option("--q", q)->required();
    c_orbit->add_option("--x", x, "start x")->required();
    c_orbit->add_option("--y", y, "start y (planar)");
    c_orbit->add_option("--n", n, "number of steps")->required();
    c_orbit->add_flag("--planar", planar, "iterate the planar extension");
    c_orbit->add_option("--out", out_path, "output CSV path")->required();

    auto* c_domain = app.add_subcommand("domain", "arc list and invariance verification");
    c_domain->add_option("--which", which, "E | omega_a | omega_v | omega_r | omega_bar")
        ->required();
    c_domain->add_option("--q", q)->required();
    c_domain->add_flag("--arcs", arcs, "print the arc list");
    c_domain->add_flag("--verify", do_verify, "run the bijectivity sampler");
    c_domain->add_option("--samples", samples, "verification sample count");
    c_domain->add_option("--tol", tol, "membership tolerance");
    c_domain->add_option("--seed", seed, "sampler seed (CFX_SEED overrides)");
    c_domain->add_option("--map", map_override,
                         "verify against this map instead of the domain's own");
    c_domain->add_option("--max-escape", max_escape, "escape fraction treated as failure");

    auto* c_areas = app.add_subcommand("areas", "closed-form vs analytic areas and the ratios");
    c_areas->add_option("--q", q)->required();

    auto* c_compare = app.add_subcommand("compare", "first returns of r and v to the intersection");
    c_compare->add_option("--q", q)->required();
    c_compare->add_option("--starts", starts, "number of start points")->required();
    c_compare->add_option("--seed", seed, "seed (CFX_SEED overrides)")->required();
    c_compare->add_option("--max-iters", max_iters, "iteration bound per return");
    c_compare->add_option("--tol", cmp_tol, "agreement tolerance");
    c_compare->add_option("--min-agreement", min_agreement, "required agreement rate");

    auto* c_induction = app.add_subcommand("induction", "slow-return table for q divisible by 4");
    c_induction->add_option("--q", q)->required();
    c_induction->add_option("--k", k_max, "largest power to test")->required();
    c_induction->add_option("--samples", ind_samples, "fiber samples per power");
    c_induction->add_option("--seed", seed, "seed (CFX_SEED overrides)");

    CLI11_PARSE(app, argc, argv);

    try {
        seed = seed_from_env(seed);
        if (c_ctx->parsed()) return cmd_ctx(q, csv);
        if (c_orbit->parsed()) return cmd_orbit(map_arg, q, x, y, n, planar, out_path);
        if (c_domain->parsed())
            return cmd_domain(which, q, arcs, do_verify, samples, tol, seed, map_override,
                              max_escape);
        if (c_areas->parsed()) return cmd_areas(q);
        if (c_compare->parsed())
            return cmd_compare(q, starts, seed, max_iters, cmp_tol, min_agreement);
        if (c_induction->parsed()) return cmd_induction(q, k_max, ind_samples, seed);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
