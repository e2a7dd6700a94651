#pragma once

#include "germ/domain.hpp"
#include "germ/interval.hpp"
#include "germ/term.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace germ {

// Point of the Riemann surface of log in the Log-chart: Log x = logmod + i*arg.
struct LPoint {
    double logmod = 0;
    double arg = 0;
};

double ldist(const LPoint &a, const LPoint &b);

// Continuous lift of f along the path; the path must start on the positive real axis.
std::vector<LPoint> eval_along_path(const Term &f, const std::vector<LPoint> &path,
                                    mpfr_prec_t precision = 256, mpfr_prec_t max_precision = 4096);

// Grid over logmod in [log a, log a + span] and arg = +-t (1 - shrink) h(|x|).
struct SampleGrid {
    int n_radial = 0;
    int n_angular = 0;
    std::vector<LPoint> points; // radial-major, args ordered -1..1 within a ring
    LPoint at(int i, int j) const { return points[static_cast<std::size_t>(i * (2 * n_angular + 1) + j)]; }
};

SampleGrid sample_domain(const DomainSpec &spec, int n_radial, int n_angular, double shrink,
                         double radial_span = 9.210340371976184, double arg_cap = 0);
std::vector<LPoint> sample_points(const SampleGrid &g);

struct CheckThresholds {
    double expansive_min = 1e-3;
    double angle_tol = 1e-3;
    double band_factor = 2.0;
    double unit_decrease = 0.05; // each band max must drop by this fraction
};

struct CheckParams {
    double radial_span = 9.210340371976184; // four decades of |x|
    int n_radial = 16;
    int n_angular = 8;
    double shrink = 0.05;
    mpfr_prec_t precision_bits = 256;
    mpfr_prec_t max_precision_bits = 4096;
    int bands = 4;
    int pairs = 2000;
    double arg_cap = 0;     // 0: no cap on |arg| of samples
    int lipschitz_level = 0; // level of the normalization in check_dlipschitz
    double min_radius = 100; // arg-distortion samples start here
    std::uint64_t seed = 1;
    CheckThresholds thresholds;
};

enum class Verdict { Pass, Fail, Inconclusive };
const char *verdict_name(Verdict v);

struct CheckReport {
    Verdict verdict = Verdict::Inconclusive;
    std::size_t samples = 0;
    std::vector<LPoint> witnesses;
    std::string statistic_name;
    double statistic = 0;
    std::vector<double> band_statistics;
    int fitted_level = 0;
    std::string note;
    // sampled domain points and the images, for --dump
    std::vector<std::pair<LPoint, LPoint>> trace;
};

CheckReport check_angle_positive(const Term &f, const DomainSpec &spec, const CheckParams &p);
CheckReport check_half_bounded(const Term &f, const DomainSpec &spec, const CheckParams &p);
CheckReport check_expansive(const Term &f, const DomainSpec &spec, const CheckParams &p);
CheckReport check_dlipschitz(const Term &u, const DomainSpec &spec, const CheckParams &p);
CheckReport check_image_class(const Term &f, const DomainSpec &spec, const Term &g1, const Term &g2,
                              const CheckParams &p);
CheckReport check_unit_at_infinity(const Term &u, const DomainSpec &spec, const CheckParams &p);
CheckReport check_arg_distortion(const Term &f, const Term &u, const DomainSpec &spec,
                                 const CheckParams &p);

} // namespace germ
