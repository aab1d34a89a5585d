// zakframe: Zak transforms, Zibulski-Zeevi frame-bound scans and
// high-precision identity verification for Hermite windows.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "zakframe/framescan.hpp"
#include "zakframe/identities.hpp"

namespace {

using namespace zakframe;
using framescan::FrameBoundsEstimate;
using framescan::GridSpec;
using hermite::HermiteWindow;
using xprec::Precision;
using xprec::XReal;
using zz::RationalDensity;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

RationalDensity parse_density(const std::string& s) {
    size_t slash = s.find('/');
    try {
        if (slash == std::string::npos) return RationalDensity(std::stoi(s), 1);
        return RationalDensity(std::stoi(s.substr(0, slash)), std::stoi(s.substr(slash + 1)));
    } catch (const std::exception& e) {
        throw UsageError(std::string("bad density '") + s + "': " + e.what());
    }
}

Precision parse_precision(int bits) {
    try {
        return xprec::precision_from_bits(bits);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
}

std::string default_tol(Precision p) {
    switch (p) {
        case Precision::bits53: return "1e-12";
        case Precision::bits106: return "1e-25";
        default: return "1e-30";
    }
}

void write_csv(const std::string& path, const std::vector<FrameBoundsEstimate>& rows) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << "b,a,sqrtA,sqrtB,argmin_x,argmin_gamma,max_trunc\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.b, r.a, r.sqrtA,
                      r.sqrtB, r.argmin_x.to_double(), r.argmin_gamma.to_double(), r.max_truncation);
        out << buf;
    }
    if (!out.good()) throw IoError("write failed for '" + path + "'");
}

void write_gnuplot(const std::string& path, const std::string& csv) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << "set logscale x\n"
        << "set datafile separator ','\n"
        << "set xlabel 'b'\n"
        << "plot '" << csv << "' skip 1 using 1:3 with lines title 'sqrt(A)', \\\n"
        << "     '" << csv << "' skip 1 using 1:4 with lines title 'sqrt(B)'\n";
    if (!out.good()) throw IoError("write failed for '" + path + "'");
}

struct ScanArgs {
    std::string window;
    std::string density = "1/2";
    double b_min = 0.125, b_max = 4.0;
    int samples = 200;
    int grid_n = 51;
    double tol = 1e-13;
    int threads = 0;
    std::vector<double> probe_b;
    std::string out_csv = "scan.csv";
    std::string out_gp;
};

void run_scan_to_files(const HermiteWindow& w, const RationalDensity& density, const ScanArgs& args) {
    GridSpec grid;
    grid.nx = grid.ngamma = args.grid_n;
    grid.probe_points = framescan::scan_probes(w.eigenclass(), density.q);
    auto rows = framescan::scan_hyperbola(w, density, args.b_min, args.b_max, args.samples, grid, args.tol,
                                          args.probe_b, args.threads);
    write_csv(args.out_csv, rows);
    if (!args.out_gp.empty()) write_gnuplot(args.out_gp, args.out_csv);
}

int cmd_eval(const std::string& window_spec, const std::string& x_str, int bits) {
    HermiteWindow w = HermiteWindow::parse(window_spec);
    Precision prec = parse_precision(bits);
    if (prec == Precision::bits53) {
        double x = 0.0;
        try {
            size_t used = 0;
            x = std::stod(x_str, &used);
            if (used != x_str.size()) throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            throw UsageError("bad --x value '" + x_str + "'");
        }
        std::printf("%.17g\n", hermite::window_eval(w, x));
    } else {
        XReal x = XReal::parse(x_str, prec);
        std::cout << hermite::window_eval(w, x).to_string() << "\n";
    }
    return kExitOk;
}

int cmd_verify(const std::vector<std::string>& selectors, int bits, std::string tol_str, int m_max,
               unsigned seed) {
    Precision prec = parse_precision(bits);
    if (tol_str.empty()) tol_str = default_tol(prec);
    XReal tol = XReal::parse(tol_str, prec);

    std::vector<std::string> ids = identities::catalog_ids();
    std::vector<std::string> wanted = selectors;
    if (wanted.empty() || (wanted.size() == 1 && wanted[0] == "all")) wanted = ids;
    for (const auto& s : wanted)
        if (std::find(ids.begin(), ids.end(), s) == ids.end())
            throw UsageError("unknown identity selector '" + s + "'");

    int failures = 0, total = 0;
    for (const auto& c : identities::catalog(m_max, seed)) {
        if (std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
        identities::VerificationReport rep = identities::verify(c, prec, tol);
        std::cout << identities::report_json_line(rep) << "\n";
        ++total;
        if (!rep.pass) ++failures;
    }
    std::cerr << total - failures << "/" << total << " cases passed at " << bits << " bits, tolerance "
              << tol_str << "\n";
    return failures == 0 ? kExitOk : kExitVerifyFail;
}

int cmd_obstructions(const std::string& window_spec, int bits, std::string tol_str) {
    HermiteWindow w = HermiteWindow::parse(window_spec);
    auto cls = w.eigenclass();
    if (!cls) throw UsageError("window '" + window_spec + "' has no Fourier eigenclass (mixed orders mod 4)");
    Precision prec = parse_precision(bits);
    if (tol_str.empty()) tol_str = default_tol(prec);
    XReal tol = XReal::parse(tol_str, prec);

    int failures = 0;
    for (const auto& pt : framescan::obstruction_points()) {
        bool applicable = false;
        for (const auto& wit : pt.witnesses) applicable |= wit.eigenclass == *cls;
        std::printf("point %d: (a,b) = (%s, %s)  ", pt.id, pt.a.to_string().c_str(),
                    pt.b.to_string().c_str());
        if (!applicable) {
            if (*cls == 3)
                std::printf("SKIP (already covered for odd windows by the half-integer symmetry zeros)\n");
            else if (*cls == 2)
                std::printf("SKIP (applies to eigenclass-3 windows)\n");
            else
                std::printf("SKIP (no obstruction applies to eigenclass %d)\n", *cls);
            continue;
        }
        framescan::CertificationReport rep = framescan::certify_obstruction(w, pt, tol, prec);
        std::printf("%s  witness (%lld/%lld, %lld/%lld)  max |entry| = %s%s%s\n",
                    rep.pass ? "PASS" : "FAIL", rep.witness_x.num, rep.witness_x.den, rep.witness_gamma.num,
                    rep.witness_gamma.den, rep.residual_str.c_str(), rep.note.empty() ? "" : "  -- ",
                    rep.note.c_str());
        if (!rep.pass) ++failures;
    }
    if (*cls == 0) std::printf("note: eigenclass 0 contains the Gaussian; no obstruction points exist\n");
    if (*cls == 1) std::printf("note: no class-wide obstruction points are known for eigenclass 1\n");
    return failures == 0 ? kExitOk : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Zak transforms, Zibulski-Zeevi frame bounds and Hermite series identities"};
    app.set_config("--config");
    app.require_subcommand(1);
    app.fallthrough();

    // eval
    auto* eval = app.add_subcommand("eval", "evaluate a Hermite window at a point");
    std::string eval_window, eval_x = "0";
    int eval_bits = 53;
    eval->add_option("--window", eval_window, "window spec: n or n0:c0,n1:c1,...")->required();
    eval->add_option("--x", eval_x, "evaluation point");
    eval->add_option("--precision", eval_bits, "working precision in bits (53, 106, 212)");

    // scan
    auto* scan = app.add_subcommand("scan", "frame-bound scan along a hyperbola ab = p/q");
    ScanArgs sa;
    scan->add_option("--window", sa.window, "window spec")->required();
    scan->add_option("--density", sa.density, "lattice density p/q");
    scan->add_option("--b-min", sa.b_min, "smallest b");
    scan->add_option("--b-max", sa.b_max, "largest b");
    scan->add_option("--samples", sa.samples, "number of log-spaced b samples");
    scan->add_option("--grid", sa.grid_n, "grid points per axis");
    scan->add_option("--tol", sa.tol, "Zak truncation tolerance per entry");
    scan->add_option("--threads", sa.threads, "thread cap (0 = auto / ZAKFRAME_THREADS)");
    scan->add_option("--probe-b", sa.probe_b, "extra exact b values to sample");
    scan->add_option("--out", sa.out_csv, "output CSV path");
    scan->add_option("--gnuplot", sa.out_gp, "also emit a gnuplot script");

    // verify
    auto* verify = app.add_subcommand("verify", "verify the identity catalog at extended precision");
    std::vector<std::string> selectors;
    int verify_bits = 212, verify_mmax = 2;
    unsigned verify_seed = identities::kDefaultSeed;
    std::string verify_tol;
    verify->add_option("ids", selectors, "identity families (I1..I7) or 'all'");
    verify->add_option("--precision", verify_bits, "working precision in bits (53, 106, 212)");
    verify->add_option("--tol", verify_tol, "PASS tolerance (default per precision)");
    verify->add_option("--m-range", verify_mmax, "largest m for the h_{4m+2}/h_{4m+3} families");
    verify->add_option("--seed", verify_seed, "seed for the class-window coefficients");

    // obstructions
    auto* obs = app.add_subcommand("obstructions", "certify the frame obstruction points for a window");
    std::string obs_window, obs_tol;
    int obs_bits = 106;
    obs->add_option("--window", obs_window, "window spec")->required();
    obs->add_option("--precision", obs_bits, "working precision in bits");
    obs->add_option("--tol", obs_tol, "certification tolerance (default per precision)");

    // figure reproductions
    auto* fig2 = app.add_subcommand("fig2", "scan of h_2 along ab = 1/2 with the exact probe");
    std::string fig2_dir = ".";
    int fig2_samples = 200, fig2_grid = 51, fig2_threads = 0;
    double fig2_tol = 1e-13;
    fig2->add_option("--out-dir", fig2_dir, "output directory");
    fig2->add_option("--samples", fig2_samples, "log-spaced b samples");
    fig2->add_option("--grid", fig2_grid, "grid points per axis");
    fig2->add_option("--tol", fig2_tol, "Zak truncation tolerance");
    fig2->add_option("--threads", fig2_threads, "thread cap");

    auto* fig3 = app.add_subcommand("fig3", "scans of h_4 (ab = 1/2) and h_5 (ab = 1/3)");
    std::string fig3_dir = ".";
    int fig3_samples = 200, fig3_grid = 51, fig3_threads = 0;
    double fig3_tol = 1e-13;
    fig3->add_option("--out-dir", fig3_dir, "output directory");
    fig3->add_option("--samples", fig3_samples, "log-spaced b samples");
    fig3->add_option("--grid", fig3_grid, "grid points per axis");
    fig3->add_option("--tol", fig3_tol, "Zak truncation tolerance");
    fig3->add_option("--threads", fig3_threads, "thread cap");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*eval) return cmd_eval(eval_window, eval_x, eval_bits);
        if (*scan) {
            HermiteWindow w = HermiteWindow::parse(sa.window);
            run_scan_to_files(w, parse_density(sa.density), sa);
            return kExitOk;
        }
        if (*verify) return cmd_verify(selectors, verify_bits, verify_tol, verify_mmax, verify_seed);
        if (*obs) return cmd_obstructions(obs_window, obs_bits, obs_tol);
        if (*fig2) {
            ScanArgs a;
            a.window = "2";
            a.density = "1/2";
            a.samples = fig2_samples;
            a.grid_n = fig2_grid;
            a.tol = fig2_tol;
            a.threads = fig2_threads;
            a.probe_b = {0.70710678118654752};  // 1/sqrt(2)
            a.out_csv = fig2_dir + "/fig2.csv";
            a.out_gp = fig2_dir + "/fig2.gp";
            run_scan_to_files(HermiteWindow::single(2), RationalDensity(1, 2), a);
            return kExitOk;
        }
        if (*fig3) {
            double r3 = 1.3160740129524924;  // 3^{1/4}
            ScanArgs a;
            a.samples = fig3_samples;
            a.grid_n = fig3_grid;
            a.tol = fig3_tol;
            a.threads = fig3_threads;
            a.out_csv = fig3_dir + "/fig3_h4.csv";
            a.out_gp = fig3_dir + "/fig3_h4.gp";
            a.probe_b = {1.0 / r3, r3 / 2.0, r3, 1.0 / (2.0 * r3)};
            run_scan_to_files(HermiteWindow::single(4), RationalDensity(1, 2), a);
            a.out_csv = fig3_dir + "/fig3_h5.csv";
            a.out_gp = fig3_dir + "/fig3_h5.gp";
            double r27 = 2.2795070569547776;  // 27^{1/4}
            a.probe_b = {1.0 / r27, r27 / 3.0};
            run_scan_to_files(HermiteWindow::single(5), RationalDensity(1, 3), a);
            return kExitOk;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const xprec::ToleranceFloorError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitOk;
}
