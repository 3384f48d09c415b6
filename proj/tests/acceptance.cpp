// Acceptance suite: one test case per acceptance criterion, each printing a
// single [criterion N] PASS/FAIL line plus supporting detail. Tolerances are
// fixed here, in code.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "vlcirs/config.hpp"
#include "vlcirs/optimizer.hpp"
#include "vlcirs/radiometry.hpp"
#include "vlcirs/secrecy.hpp"
#include "vlcirs/sweep.hpp"

using namespace vlcirs;

namespace {

constexpr double kPi = 3.141592653589793;

struct Stopwatch {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void report(int criterion, bool pass, double secs, const std::string& detail) {
    std::printf("[criterion %d] %s (%.2f s) %s\n", criterion, pass ? "PASS" : "FAIL", secs,
                detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), f, v);
    return buf;
}

// ---- bundled reference series (data/reference_rates.csv) -------------------
// Eve x-offsets -1..1 step 0.1 (21 points) for the stock scenario.

constexpr std::array<double, 21> kLosEve = {
    0.167108549538856, 0.174532065352172, 0.181580607102304, 0.188143010371494,
    0.19410834077006,  0.199369517998889, 0.203827159602599, 0.207393430426236,
    0.209995657404435, 0.211579463950729, 0.212111197120831, 0.211579463950729,
    0.209995657404435, 0.207393430426236, 0.203827159602599, 0.199369517998889,
    0.19410834077006,  0.188143010371494, 0.181580607102304, 0.174532065352172,
    0.167108549538856};

constexpr double kLosBob = 0.209995657404435;

constexpr std::array<double, 21> kSumBobRsf = {
    0.343845557772693, 0.343820124974339, 0.344204060792365, 0.344152157086278,
    0.343939841185173, 0.343845557772693, 0.343820124974339, 0.344109666310152,
    0.344152157086278, 0.343939841185173, 0.343154447078417, 0.338252881661081,
    0.334609065049456, 0.339925847732594, 0.344360780904941, 0.343845557772693,
    0.343820124974339, 0.344204060792365, 0.344152157086278, 0.343939841185173,
    0.343154447078417};

// Eve's summed gain under the spot search equals her LoS gain except at the
// overlap point x = 0.2.
std::array<double, 21> sum_eve_rsf() {
    std::array<double, 21> s = kLosEve;
    s[12] = 0.334609065049456;
    return s;
}

constexpr double kSumBobFob = 0.334609065049456;

std::array<double, 21> sum_eve_fob() {
    std::array<double, 21> s = kLosEve;
    s[11] = 0.334454926184806;
    s[12] = 0.334609065049456;
    s[13] = 0.328483258839281;
    return s;
}

constexpr std::array<double, 21> kRateRsf = {
    0.543251175389834, 0.499939442963088, 0.461652598302076, 0.426157760885028,
    0.394457983776051, 0.367546176357525, 0.345442925016605, 0.329000492893704,
    0.316698177232087, 0.308594199428498, 0.305819061941522, 0.268220611142291,
    0.0,               0.308461865074352, 0.345790418556026, 0.367546176357525,
    0.39411049023663,  0.426308288844042, 0.461502070343061, 0.500286936502509,
    0.541242915516691};

constexpr std::array<double, 21> kRateFob = {
    0.516072926560884, 0.472835026576918, 0.433434179216596, 0.398089869758562,
    0.36700607385046,  0.340367927528575, 0.318338508630436, 0.301055847760186,
    0.288630286105621, 0.281142289502907, 0.278640813112572, 0.0,
    0.0,               0.0,               0.318338508630436, 0.340367927528575,
    0.36700607385046,  0.398089869758562, 0.433434179216596, 0.472835026576919,
    0.516072926560884};

constexpr std::array<double, 21> kRateNoIrs = {
    0.0516889569436838, 0.00845105695971803, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0,
    0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.00845105695971825, 0.0516889569436838};

constexpr double kPeak = 0.14;
// Noise level of the reference profile, the median of the per-point
// closed-form inversions of the reference series.
constexpr double kProfileNoise = 1.0e-6;

// Structural sweep configuration shared by criteria 3 and 4: desk-scale
// quadrature, gains calibrated onto the reference scale, reference noise.
ExperimentConfig structural_config() {
    ExperimentConfig cfg = load_config_text("");
    cfg.scenario.quadrature.element_edge = 1e-3;
    cfg.scenario.noise_variance = kProfileNoise;
    cfg.gain_calibration = kLosBob / los_gain(cfg.scenario, cfg.scenario.bob);
    cfg.pso.swarm_size = 48;
    cfg.pso.max_iterations = 150;
    cfg.pso.seed = 1;
    return cfg;
}

Vec3 reflected_receive_point(const Scenario& sc, const Vec3& mirror_c, const Vec3& normal) {
    const Vec3 rdir =
        reflect_about_normal((sc.source.center - mirror_c).normalized(), normal);
    const double t = (sc.bob.plane_depth - mirror_c.z) / rdir.z;
    return mirror_c + t * rdir;
}

} // namespace

TEST_CASE("criterion 1: geometry property suite") {
    Stopwatch sw;
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> ang(-kPi / 2 + 1e-6, kPi / 2 - 1e-6);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);

    double worst = 0.0;
    int cases = 0;
    std::vector<std::string> fails;

    for (int k = 0; k < 1200; ++k) {
        // angle/normal round trip
        const MirrorOrientation o{ang(rng), ang(rng)};
        const MirrorOrientation back = angles_from_normal(normal_from_angles(o));
        worst = std::max({worst, std::abs(back.roll - o.roll), std::abs(back.yaw - o.yaw)});

        // reflection law, coplanarity, image-plane membership
        const Vec3 s{coord(rng), coord(rng), coord(rng)};
        const Vec3 r{coord(rng), coord(rng), coord(rng) + 3.0};
        const Vec3 q{coord(rng), coord(rng), coord(rng) + 6.0};
        const Vec3 a = s - r, b = q - r;
        if (a.norm() < 0.2 || b.norm() < 0.2) continue;
        if ((a.normalized() + b.normalized()).norm() < 0.2) continue;
        ++cases;

        const Vec3 n = snell_normal(s, r, q);
        const Vec3 d = b.normalized();
        const Vec3 refl = reflect_about_normal(d, n);
        const Vec3 want = a.normalized();
        worst = std::max({worst, std::abs(refl.x - want.x), std::abs(refl.y - want.y),
                          std::abs(refl.z - want.z)});
        worst = std::max(worst, std::abs(dot(cross(d, n), want)));

        // image of q through the specular orientation lands on s's plane at s
        if (refl.z != 0.0) {
            const Vec3 image = pre_reflection_image(r, n, q, s.z);
            worst = std::max({worst, std::abs(image.x - s.x), std::abs(image.y - s.y)});
            if (image.z != s.z) fails.push_back("image left the plane");
        }
    }

    const double secs = sw.seconds();
    const bool pass = worst < 1e-9 && cases >= 1000 && fails.empty() && secs < 1.0;
    report(1, pass, secs,
           "- " + std::to_string(cases) + " randomized cases, worst residual " +
               fmt("%.2e", worst));
    CHECK(cases >= 1000);
    CHECK(worst < 1e-9);
    CHECK(fails.empty());
    CHECK(secs < 1.0);
}

TEST_CASE("criterion 2: secrecy-formula regression against the reference series") {
    Stopwatch sw;
    const auto eve_rsf = sum_eve_rsf();
    const auto eve_fob = sum_eve_fob();

    // Fit sigma^2 by least squares from the spot-search and focus-on-Bob triples.
    std::vector<RateSample> fit_set;
    for (int i = 0; i < 21; ++i) {
        fit_set.push_back({kSumBobRsf[i], eve_rsf[i], kRateRsf[i]});
        fit_set.push_back({kSumBobFob, eve_fob[i], kRateFob[i]});
    }
    const double fitted = fit_noise_variance(fit_set, kPeak);

    // Per-point closed-form inversions (the independent oracle).
    std::vector<double> inversions;
    for (const RateSample& s : fit_set) {
        if (s.rate > 0.0) {
            inversions.push_back(invert_noise_variance(s.gain_bob, s.gain_eve, kPeak, s.rate));
        }
    }
    std::sort(inversions.begin(), inversions.end());
    const double median = inversions[inversions.size() / 2];

    // Every reference point, all three series.
    struct Point {
        const char* series;
        double x, hb, he, rate;
    };
    std::vector<Point> points;
    for (int i = 0; i < 21; ++i) {
        const double x = -1.0 + 0.1 * i;
        points.push_back({"RSF", x, kSumBobRsf[i], eve_rsf[i], kRateRsf[i]});
        points.push_back({"FoB", x, kSumBobFob, eve_fob[i], kRateFob[i]});
        points.push_back({"NoIRS", x, kLosBob, kLosEve[i], kRateNoIrs[i]});
    }

    int failures = 0;
    double worst = 0.0;
    std::string analysis;
    for (const Point& p : points) {
        const double model = secrecy_rate_lb({p.hb, p.he, kPeak, fitted});
        const double resid = std::abs(model - p.rate);
        worst = std::max(worst, resid);
        if (resid > 5e-3) {
            ++failures;
            double needed = std::numeric_limits<double>::quiet_NaN();
            if (p.rate > 0.0) needed = invert_noise_variance(p.hb, p.he, kPeak, p.rate);
            analysis += "\n    " + std::string(p.series) + " x=" + fmt("%.1f", p.x) +
                        ": residual " + fmt("%.2e", resid) + ", gains would require sigma^2 = " +
                        fmt("%.2e", needed) + " (vs fitted " + fmt("%.2e", fitted) + ")";
        }
    }

    const double secs = sw.seconds();
    const bool pass = failures == 0 && secs < 1.0;
    report(2, pass, secs,
           "- fitted sigma^2 " + fmt("%.3e", fitted) + " (inversion median " +
               fmt("%.3e", median) + "), " + std::to_string(63 - failures) +
               "/63 points within 5e-3 nats, worst residual " + fmt("%.2e", worst) + analysis);

    CHECK(fitted > 1e-7);
    CHECK(fitted < 1e-5);
    CHECK(median == doctest::Approx(1.0e-6).epsilon(1e-6));
    CHECK(secs < 1.0);
    CHECK(failures == 0); // two reference points are mutually inconsistent; see ledger
}

TEST_CASE("criterion 3: structural reproduction of the eavesdropper sweep") {
    Stopwatch sw;
    ExperimentConfig cfg = structural_config();
    const SweepTable table = run_sweep_eve(cfg);
    REQUIRE(table.rows.size() == 63);

    const auto row = [&](int point, Method m) -> const SweepRow& {
        const int mi = m == Method::rsf ? 0 : (m == Method::fob ? 1 : 2);
        return table.rows[static_cast<std::size_t>(3 * point + mi)];
    };

    std::vector<std::string> fails;

    // (a) no-mirror rates: a contiguous zero band around x = 0, positive ends.
    {
        int lo = 21, hi = -1;
        for (int i = 0; i < 21; ++i) {
            if (row(i, Method::noirs).secrecy_rate == 0.0) {
                lo = std::min(lo, i);
                hi = std::max(hi, i);
            }
        }
        bool contiguous = lo <= 10 && hi >= 10;
        for (int i = lo; i <= hi && contiguous; ++i) {
            if (row(i, Method::noirs).secrecy_rate != 0.0) contiguous = false;
        }
        if (!contiguous) fails.push_back("(a) zero band not contiguous around 0");
        if (!(row(0, Method::noirs).secrecy_rate > 0.0) ||
            !(row(20, Method::noirs).secrecy_rate > 0.0)) {
            fails.push_back("(a) no-mirror rate not positive at |x| = 1");
        }
    }

    // (b) focus-on-Bob: insecure exactly where Eve catches reflected light,
    //     and that band is x in {0.1, 0.2, 0.3}.
    for (int i = 0; i < 21; ++i) {
        const SweepRow& r = row(i, Method::fob);
        const bool lit = r.eve.irs > 0.0;
        const bool expected_lit = i == 11 || i == 12 || i == 13;
        if (lit != expected_lit) {
            fails.push_back("(b) reflected light on Eve at x=" + fmt("%.1f", r.sweep_value) +
                            (lit ? " unexpectedly" : " missing"));
        }
        if (lit && r.secrecy_rate != 0.0) {
            fails.push_back("(b) rate nonzero inside the lit band at x=" +
                            fmt("%.1f", r.sweep_value));
        }
        if (!lit && !(r.secrecy_rate > 0.0)) {
            fails.push_back("(b) rate zero outside the lit band at x=" +
                            fmt("%.1f", r.sweep_value));
        }
    }

    // (c) spot search: insecure only at the overlap point x = 0.2.
    for (int i = 0; i < 21; ++i) {
        const SweepRow& r = row(i, Method::rsf);
        if (i == 12) {
            if (r.secrecy_rate != 0.0) fails.push_back("(c) rate nonzero at the overlap point");
        } else if (!(r.secrecy_rate > 0.0)) {
            fails.push_back("(c) rate zero at x=" + fmt("%.1f", r.sweep_value));
        }
    }

    // (d) the optimized spot never loses to the baseline.
    for (int i = 0; i < 21; ++i) {
        if (row(i, Method::rsf).secrecy_rate < row(i, Method::fob).secrecy_rate) {
            fails.push_back("(d) RSF below FoB at x=" + fmt("%.1f", -1.0 + 0.1 * i));
        }
    }

    for (const SweepRow& r : table.rows) {
        if (!r.error.empty()) fails.push_back("row error: " + r.error);
    }

    const double secs = sw.seconds();
    std::string detail = "- 21 points x 3 methods, calibration " +
                         fmt("%.3e", cfg.gain_calibration);
    for (const std::string& f : fails) detail += "\n    " + f;
    report(3, fails.empty() && secs < 600.0, secs, detail);
    CHECK(fails.empty());
    CHECK(secs < 600.0);
}

TEST_CASE("criterion 4: structural reproduction of the mirror-size sweep") {
    Stopwatch sw;
    ExperimentConfig cfg = structural_config();
    // The per-step monotonicity tolerance (2%) needs the reflected-path
    // quadrature in its converged regime; the lit patch on a mirror face is
    // only ~1.5 mm tall, so millimeter elements quantize it (see criterion 7).
    cfg.scenario.quadrature.element_edge = 2e-4;
    cfg.sweep.axis = SweepAxis::mirror_edge;
    cfg.sweep.values = {0.04, 0.05, 0.06, 0.07, 0.08, 0.09, 0.10, 0.11, 0.12};
    cfg.sweep.array_sizes = {4, 5, 6};
    const SweepTable table = run_sweep_mirror_size(cfg);
    REQUIRE(table.rows.size() == 9 * 3 * 3);

    // rows ordered edge-major, then size, then method
    const auto rate = [&](int edge_i, int size_i, Method m) {
        const int mi = m == Method::rsf ? 0 : (m == Method::fob ? 1 : 2);
        const SweepRow& r = table.rows[static_cast<std::size_t>(9 * edge_i + 3 * size_i + mi)];
        REQUIRE(r.error.empty());
        return r.secrecy_rate;
    };

    std::vector<std::string> fails;
    const char* size_name[] = {"4x4", "5x5", "6x6"};

    for (int s = 0; s < 3; ++s) {
        // (a) baseline grows to 8 cm, positive there, gone by 10 cm
        for (int e = 0; e + 1 <= 4; ++e) {
            if (rate(e + 1, s, Method::fob) < rate(e, s, Method::fob)) {
                fails.push_back(std::string("(a) FoB not nondecreasing to 8 cm for ") +
                                size_name[s]);
                break;
            }
        }
        if (!(rate(4, s, Method::fob) > 0.0)) {
            fails.push_back(std::string("(a) FoB not positive at 8 cm for ") + size_name[s]);
        }
        for (int e = 6; e < 9; ++e) {
            if (rate(e, s, Method::fob) != 0.0) {
                fails.push_back(std::string("(a) FoB not collapsed at >= 10 cm for ") +
                                size_name[s]);
                break;
            }
        }

        // (b) spot search stays positive, monotone within 2% per step
        for (int e = 0; e < 9; ++e) {
            if (!(rate(e, s, Method::rsf) > 0.0)) {
                const SweepRow& r = table.rows[static_cast<std::size_t>(9 * e + 3 * s)];
                fails.push_back(std::string("(b) RSF not positive for ") + size_name[s] +
                                " at edge " + fmt("%.2f", 0.04 + 0.01 * e) +
                                " (best attainable gain ratio " +
                                fmt("%.5f", r.bob.total() / r.eve.total()) +
                                " vs secrecy threshold 1.19302)");
            }
        }
        for (int e = 0; e + 1 < 9; ++e) {
            if (rate(e + 1, s, Method::rsf) < 0.98 * rate(e, s, Method::rsf)) {
                fails.push_back(std::string("(b) RSF decreasing beyond 2% for ") + size_name[s] +
                                " at edge " + fmt("%.2f", 0.05 + 0.01 * e));
            }
        }

        // (c) no mirrors, no secrecy at this eavesdropper position
        for (int e = 0; e < 9; ++e) {
            if (rate(e, s, Method::noirs) != 0.0) {
                fails.push_back("(c) no-mirror rate nonzero");
                break;
            }
        }
    }

    // (d) larger arrays dominate pointwise under the spot search
    for (int e = 0; e < 9; ++e) {
        if (rate(e, 1, Method::rsf) < rate(e, 0, Method::rsf) ||
            rate(e, 2, Method::rsf) < rate(e, 1, Method::rsf)) {
            fails.push_back("(d) larger array dominated at edge " + fmt("%.2f", 0.04 + 0.01 * e));
        }
    }

    const double secs = sw.seconds();
    std::string detail = "- 9 edges x 3 sizes x 3 methods";
    for (const std::string& f : fails) detail += "\n    " + f;
    report(4, fails.empty() && secs < 900.0, secs, detail);
    CHECK(fails.empty());
    CHECK(secs < 900.0);
}

TEST_CASE("criterion 5: spot reformulation matches brute-force orientation search") {
    Stopwatch sw;
    Scenario one = default_scenario();
    one.array.rows = 1;
    one.array.cols = 1;
    one.quadrature.element_edge = 2e-4; // converged regime for the comparison

    const double step = 0.5 * kPi / 180.0;
    const auto [oracle_grid, oracle_rate] = orientation_grid_oracle(one, step);
    const double oracle_gain = irs_gain(one, oracle_grid, one.bob);

    // The oracle's implied spot: where its mirror sends the source center.
    const Vec3 rc = mirror_center(one.array, 0, 0);
    const Vec3 hit = reflected_receive_point(one, rc, normal_from_angles(oracle_grid.at(0, 0)));
    const ReflectedSpot implied{hit.x, hit.y + one.array.offset_y, hit.z};
    const double rsf_gain = irs_gain(one, orientation_grid_for_spot(one, implied), one.bob);

    // Aiming straight at Bob is just as good.
    const ReflectedSpot at_bob{one.bob.offset_x, one.bob.offset_y, one.bob.plane_depth};
    const double bob_gain = irs_gain(one, orientation_grid_for_spot(one, at_bob), one.bob);

    const double secs = sw.seconds();
    const bool pass = oracle_gain > 0.0 && rsf_gain >= 0.99 * oracle_gain && secs < 300.0;
    report(5, pass, secs,
           "- oracle gain " + fmt("%.6e", oracle_gain) + ", spot-derived " +
               fmt("%.6e", rsf_gain) + " (" + fmt("%.4f", rsf_gain / oracle_gain) +
               " of oracle), focus-on-user " + fmt("%.4f", bob_gain / oracle_gain) +
               " of oracle");
    CHECK(oracle_gain > 0.0);
    CHECK(rsf_gain >= 0.99 * oracle_gain);
    CHECK(secs < 300.0);
    (void)oracle_rate;
}

TEST_CASE("criterion 6: optimizer soundness") {
    Stopwatch sw;
    const Scenario sc = default_scenario();
    const double fob = secrecy_of_spot(sc, fob_spot(sc));

    bool all_at_least_fob = true;
    PsoParams params; // stock parameters
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        params.seed = seed;
        if (pso_ii(sc, params).best_fitness < fob) all_at_least_fob = false;
    }

    params.seed = 1;
    const double pso_best = pso_ii(sc, params).best_fitness;
    const auto [oracle_spot, oracle_val] = grid_oracle_spot(sc, 0.25);

    const double secs = sw.seconds();
    const bool pass = all_at_least_fob && pso_best >= oracle_val - 1e-3 && secs < 600.0;
    report(6, pass, secs,
           "- 20 seeds >= baseline: " + std::string(all_at_least_fob ? "yes" : "NO") +
               ", swarm best " + fmt("%.6f", pso_best) + " vs 0.25 m grid " +
               fmt("%.6f", oracle_val));
    CHECK(all_at_least_fob);
    CHECK(pso_best >= oracle_val - 1e-3);
    CHECK(secs < 600.0);
}

TEST_CASE("criterion 7: quadrature convergence") {
    Stopwatch sw;
    const Scenario base = default_scenario();
    const OrientationGrid grid = orientation_grid_for_spot(base, fob_spot(base));

    const auto at_edge = [&](double edge) {
        Scenario sc = base;
        sc.quadrature.element_edge = edge;
        return std::array<double, 4>{los_gain(sc, sc.bob), los_gain(sc, sc.eve),
                                     irs_gain(sc, grid, sc.bob), irs_gain(sc, grid, sc.eve)};
    };
    const char* names[] = {"los bob", "los eve", "irs bob", "irs eve"};

    const auto coarse = at_edge(2e-3);
    const auto fine = at_edge(1e-3);

    std::string detail = "- 2e-3 -> 1e-3:";
    bool pass = true;
    double rel[4];
    for (int k = 0; k < 4; ++k) {
        rel[k] = std::abs(coarse[k] - fine[k]) / fine[k];
        detail += std::string(" ") + names[k] + " " + fmt("%.2e", rel[k]);
        if (!(rel[k] < 0.005)) pass = false;
    }

    // Context for the halving above: the reflected-path rule only enters its
    // converged regime once the ~1.5 mm lit strip is resolved.
    const auto h1 = at_edge(4e-4);
    const auto h2 = at_edge(2e-4);
    const auto h3 = at_edge(1e-4);
    detail += "\n    4e-4 -> 2e-4: irs bob " + fmt("%.2e", std::abs(h1[2] - h2[2]) / h2[2]) +
              ", irs eve " + fmt("%.2e", std::abs(h1[3] - h2[3]) / h2[3]);
    detail += "\n    2e-4 -> 1e-4: irs bob " + fmt("%.2e", std::abs(h2[2] - h3[2]) / h3[2]) +
              ", irs eve " + fmt("%.2e", std::abs(h2[3] - h3[3]) / h3[3]);

    const double secs = sw.seconds();
    report(7, pass, secs, detail + " (tolerance 5e-3 relative)");
    for (int k = 0; k < 4; ++k) {
        CHECK(rel[k] < 0.005); // the reflected-path pair is unresolved at these
                               // element sizes; see the ledger analysis
    }
}
