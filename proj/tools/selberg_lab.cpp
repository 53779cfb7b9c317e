// selberg-lab: length spectra, heat traces, zeta values, determinants and
// degeneration sweeps for compact genus-2 hyperbolic surfaces, from the
// command line. One subcommand per artifact; CSV for grids, JSON for scalars.

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "selberg/degeneration.hpp"
#include "selberg/detlap.hpp"
#include "selberg/errors.hpp"
#include "selberg/group.hpp"
#include "selberg/group_io.hpp"
#include "selberg/heat.hpp"
#include "selberg/spectrum.hpp"
#include "selberg/zeta.hpp"

namespace {

using nlohmann::ordered_json;

// fixed decimal formatting so outputs are byte-stable across runs
std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt(const selberg::ExtendedLog& x) {
    return x.is_saturated() ? x.wire() : fmt(x.log_value());
}

std::vector<double> parse_doubles(const std::string& text, const char* flag) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            double v = std::stod(item, &pos);
            if (pos != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw selberg::validation_error(std::string(flag) + ": cannot parse '" + item +
                                            "' as a number");
        }
    }
    if (out.empty()) throw selberg::validation_error(std::string(flag) + ": empty list");
    return out;
}

std::vector<int> parse_ints(const std::string& text, const char* flag) {
    std::vector<int> out;
    for (double v : parse_doubles(text, flag)) {
        int i = static_cast<int>(v);
        if (static_cast<double>(i) != v) {
            throw selberg::validation_error(std::string(flag) + ": expected integers");
        }
        out.push_back(i);
    }
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw selberg::io_error("cannot open '" + path + "' for writing");
    f << text;
    f.flush();
    if (!f) throw selberg::io_error("write to '" + path + "' failed");
}

// options shared by every subcommand that starts from a surface
struct SurfaceArgs {
    std::string builtin;
    std::string group_path;
    double cutoff = 0.0;
    int max_depth = 0;  // 0 = choose from the cutoff and deepen until certified
    int threads = 0;
    std::string out;
};

void add_surface_flags(CLI::App* cmd, SurfaceArgs& a, bool need_cutoff = true) {
    cmd->add_option("--builtin", a.builtin, "built-in surface: octagon or fn-base");
    cmd->add_option("--group", a.group_path, "surface group JSON file");
    if (need_cutoff) {
        cmd->add_option("--cutoff", a.cutoff, "geodesic length cutoff")->required();
    }
    cmd->add_option("--max-depth", a.max_depth,
                    "word-length bound for the enumeration (default: from cutoff, "
                    "deepened until the spectrum stabilizes)");
    cmd->add_option("--threads", a.threads, "worker thread cap (default: hardware)");
    cmd->add_option("--out", a.out, "output file")->required();
}

selberg::GroupPresentation resolve_group(const SurfaceArgs& a) {
    if (!a.builtin.empty() && !a.group_path.empty()) {
        throw selberg::validation_error("--builtin and --group are mutually exclusive");
    }
    if (!a.builtin.empty()) {
        if (a.builtin == "octagon") return selberg::builtin_octagon();
        if (a.builtin == "fn-base") return selberg::builtin_fn_base();
        throw selberg::validation_error("unknown builtin '" + a.builtin +
                                        "' (expected octagon or fn-base)");
    }
    if (!a.group_path.empty()) return selberg::load_group(a.group_path);
    throw selberg::validation_error("one of --builtin or --group is required");
}

selberg::EnumerationOptions enum_options(const SurfaceArgs& a) {
    selberg::EnumerationOptions opts;
    unsigned hw = std::thread::hardware_concurrency();
    opts.threads = a.threads > 0 ? a.threads : static_cast<int>(hw ? hw : 1);
    if (const char* env = std::getenv("SELBERG_LAB_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0' || v == 0) {
            throw selberg::validation_error("SELBERG_LAB_BUDGET must be a positive integer");
        }
        opts.budget = v;
    }
    return opts;
}

// explicit --max-depth is taken literally; otherwise start near the cutoff and
// deepen until the stabilization certificate holds
selberg::LengthSpectrum enumerate_for(const selberg::GroupPresentation& g,
                                      const SurfaceArgs& a,
                                      const selberg::EnumerationOptions& opts) {
    if (a.max_depth > 0) return selberg::enumerate_spectrum(g, a.cutoff, a.max_depth, opts);
    int depth = static_cast<int>(std::ceil(a.cutoff)) + 4;
    selberg::LengthSpectrum ls = selberg::enumerate_spectrum(g, a.cutoff, depth, opts);
    for (int retry = 0; retry < 4 && !ls.stabilized; ++retry) {
        depth += 2;
        ls = selberg::enumerate_spectrum(g, a.cutoff, depth, opts);
    }
    return ls;
}

int cmd_spectrum(const SurfaceArgs& a) {
    selberg::GroupPresentation g = resolve_group(a);
    selberg::LengthSpectrum ls = enumerate_for(g, a, enum_options(a));
    std::string csv = "length,multiplicity\n";
    for (const auto& e : ls.entries) {
        csv += fmt(e.length) + "," + std::to_string(e.multiplicity) + "\n";
    }
    write_text(a.out, csv);
    ordered_json side;
    side["cutoff"] = ls.cutoff;
    side["word_depth"] = ls.word_depth;
    side["stabilized"] = ls.stabilized;
    write_text(a.out + ".json", side.dump(2) + "\n");
    return 0;
}

int cmd_heat_trace(const SurfaceArgs& a, const std::string& t_grid, int power_cap) {
    std::vector<double> grid = parse_doubles(t_grid, "--t-grid");
    selberg::GroupPresentation g = resolve_group(a);
    selberg::LengthSpectrum ls = enumerate_for(g, a, enum_options(a));
    std::string csv = "t,htr,tail_bound,lower_bound\n";
    for (double t : grid) {
        int cap = power_cap > 0 ? power_cap : selberg::default_power_cap(ls, t);
        selberg::HeatTraceSample s = selberg::heat_trace(ls, t, cap);
        double lower = selberg::heat_trace_lower_bound(ls.genus, t);
        csv += fmt(t) + "," + fmt(s.value) + "," + fmt(s.tail_bound) + "," + fmt(lower) + "\n";
    }
    write_text(a.out, csv);
    return 0;
}

int cmd_zeta(const SurfaceArgs& a, const std::string& s_list, int k_max) {
    std::vector<double> svals = parse_doubles(s_list, "--s");
    selberg::GroupPresentation g = resolve_group(a);
    selberg::LengthSpectrum ls = enumerate_for(g, a, enum_options(a));
    std::string csv = "s,log_z,dlogz_product,dlogz_mckean,tail_log\n";
    for (double s : svals) {
        selberg::ZetaEvaluation z = selberg::selberg_zeta_log(ls, s, k_max);
        double dp = selberg::zeta_log_derivative_product(ls, s, k_max);
        double dm = selberg::zeta_log_derivative_mckean(ls, s);
        csv += fmt(s) + "," + fmt(z.log_value) + "," + fmt(dp) + "," + fmt(dm) + "," +
               fmt(z.tail_log_bound) + "\n";
    }
    write_text(a.out, csv);
    return 0;
}

int cmd_det(const SurfaceArgs& a, int n, int k_max) {
    selberg::GroupPresentation g = resolve_group(a);
    selberg::LengthSpectrum ls = enumerate_for(g, a, enum_options(a));
    selberg::SpectralConstants c = selberg::spectral_constants(ls.genus, n);
    selberg::ZetaEvaluation z = selberg::selberg_zeta_log(ls, static_cast<double>(n), k_max);
    double log_det = selberg::log_det_laplacian(ls.genus, n, z);
    ordered_json out;
    out["g"] = c.g;
    out["n"] = c.n;
    out["c_n"] = c.c_n;
    out["log_C_gn"] = c.log_c_gn;
    out["log_z"] = z.log_value;
    out["log_det"] = log_det;
    write_text(a.out, out.dump(2) + "\n");
    return 0;
}

int cmd_t0(int genus, const std::string& out_path) {
    double t0 = selberg::find_t0(genus);
    ordered_json out;
    out["g"] = genus;
    out["t0"] = t0;
    write_text(out_path, out.dump(2) + "\n");
    return 0;
}

struct FamilyArgs {
    std::string fn = "1,2,2,0,0,0";
    std::string pinch = "1";
    std::string ell_grid = "1,0.5,0.25";
    std::string n_values = "2,3,4,5,6";
    std::string cutoffs = "6";
    int max_depth = 8;
    int threads = 0;
    std::string out;
};

int cmd_family(const FamilyArgs& fa) {
    std::vector<double> fn = parse_doubles(fa.fn, "--fn");
    if (fn.size() != 6) {
        throw selberg::validation_error("--fn needs 6 values: l1,l2,l3,theta1,theta2,theta3");
    }
    selberg::FamilySpec spec;
    std::copy(fn.begin(), fn.end(), spec.base_fn.begin());
    spec.pinch_indices = parse_ints(fa.pinch, "--pinch");
    spec.ell_grid = parse_doubles(fa.ell_grid, "--ell-grid");
    spec.n_values = parse_ints(fa.n_values, "--n-values");
    std::vector<double> cutoffs = parse_doubles(fa.cutoffs, "--cutoff");

    SurfaceArgs sa;
    sa.threads = fa.threads;
    selberg::EnumerationOptions opts = enum_options(sa);
    std::vector<selberg::GroupPresentation> family = selberg::make_pinching_family(spec);
    std::vector<selberg::BoundRecord> records =
        selberg::check_bounds(family, spec, cutoffs, fa.max_depth, opts);

    std::string csv = "ell,tau,log_z2,n,log_zn,lower_ok,upper_ok,mt1_upper,zx2,mu_pole\n";
    for (const selberg::BoundRecord& rec : records) {
        if (!rec.valid) {
            throw selberg::numerical_error("family member ell=" + fmt(rec.ell) +
                                           " failed: " + rec.failure);
        }
        const std::string zx2 = fmt(rec.envelopes.at("zx2"));
        for (const auto& [n, per] : rec.per_n) {
            csv += fmt(rec.ell) + "," + fmt(rec.tau_abs.front()) + "," + fmt(rec.log_z2) +
                   "," + std::to_string(n) + "," + fmt(per.log_zn) + "," +
                   (per.lower_ok ? "true" : "false") + "," +
                   (per.upper_ok ? "true" : "false") + "," +
                   fmt(per.envelopes.at("mt1_upper")) + "," + zx2 + "," +
                   fmt(per.envelopes.at("mu_pole")) + "\n";
        }
    }
    write_text(fa.out, csv);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral toolkit for compact genus-2 hyperbolic surfaces"};
    app.require_subcommand(1);

    SurfaceArgs spectrum_args;
    CLI::App* spectrum = app.add_subcommand("spectrum", "enumerate the length spectrum");
    add_surface_flags(spectrum, spectrum_args);

    SurfaceArgs heat_args;
    std::string t_grid = "2.5,3,5,10,25,50";
    int power_cap = 0;
    CLI::App* heat = app.add_subcommand("heat-trace", "geometric heat trace on a t grid");
    add_surface_flags(heat, heat_args);
    heat->add_option("--t-grid", t_grid, "comma-separated t values");
    heat->add_option("--power-cap", power_cap, "truncate geodesic powers (default: auto)");

    SurfaceArgs zeta_args;
    std::string s_list = "2";
    int zeta_k_max = 80;
    CLI::App* zeta = app.add_subcommand("zeta", "Selberg zeta log-values and log-derivatives");
    add_surface_flags(zeta, zeta_args);
    zeta->add_option("--s", s_list, "comma-separated s values (each > 1)");
    zeta->add_option("--k-max", zeta_k_max, "vertical product truncation");

    SurfaceArgs det_args;
    int det_n = 2;
    int det_k_max = 80;
    CLI::App* det = app.add_subcommand("det", "regularized Laplacian determinant at weight n");
    add_surface_flags(det, det_args);
    det->add_option("--n", det_n, "integer weight, n >= 2");
    det->add_option("--k-max", det_k_max, "vertical product truncation");

    int t0_genus = 2;
    std::string t0_out;
    CLI::App* t0 = app.add_subcommand("t0", "smallest heat time with the kernel domination");
    t0->add_option("--genus", t0_genus, "surface genus, >= 2")->required();
    t0->add_option("--out", t0_out, "output file")->required();

    FamilyArgs family_args;
    CLI::App* family = app.add_subcommand("family", "pinching-family bound audit");
    family->add_option("--fn", family_args.fn, "base Fenchel-Nielsen l1,l2,l3,t1,t2,t3");
    family->add_option("--pinch", family_args.pinch, "cuff indices to pinch (subset of 1,2,3)");
    family->add_option("--ell-grid", family_args.ell_grid, "pinched lengths, decreasing");
    family->add_option("--n-values", family_args.n_values, "zeta weights to audit");
    family->add_option("--cutoff", family_args.cutoffs, "length cutoff (one, or one per member)");
    family->add_option("--max-depth", family_args.max_depth, "base word-length bound");
    family->add_option("--threads", family_args.threads, "worker thread cap");
    family->add_option("--out", family_args.out, "output file")->required();

    try {
        app.parse(argc, argv);
        if (*spectrum) return cmd_spectrum(spectrum_args);
        if (*heat) return cmd_heat_trace(heat_args, t_grid, power_cap);
        if (*zeta) return cmd_zeta(zeta_args, s_list, zeta_k_max);
        if (*det) return cmd_det(det_args, det_n, det_k_max);
        if (*t0) return cmd_t0(t0_genus, t0_out);
        if (*family) return cmd_family(family_args);
        std::fprintf(stderr, "error: no subcommand\n");
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const selberg::validation_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const selberg::numerical_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const selberg::io_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
