#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "specball/falsifier.hpp"
#include "specball/fiber.hpp"

namespace specball {

// One row of the falsifier CSV: the fiber parameter, the twisted
// off-diagonal entries, and this point's contribution to the least-squares
// objective with the fitted conjugator.  Rows that trip the exp guard carry
// the inf sentinel and NaN image entries.
struct FiberScanRow {
    Complex lambda;
    Complex f12{std::numeric_limits<double>::quiet_NaN(),
                std::numeric_limits<double>::quiet_NaN()};
    Complex f21{std::numeric_limits<double>::quiet_NaN(),
                std::numeric_limits<double>::quiet_NaN()};
    double residual_contrib = std::numeric_limits<double>::infinity();
    bool overflow = false;
};

struct FiberScan {
    std::vector<FiberScanRow> rows;
    std::optional<FitReport> fit; // absent when fewer than 1 point is usable
    std::size_t overflow_count = 0;
};

inline FiberScan fiber_scan(const EntirePoly &phi, double radius, std::size_t count) {
    if (!(radius > 0.0))
        throw std::invalid_argument("fiber_scan: radius must be > 0");
    if (count < 1)
        throw std::invalid_argument("fiber_scan: count must be >= 1");

    FiberScan scan;
    std::vector<Mat2> usable_points;
    std::vector<std::size_t> usable_rows;
    scan.rows.reserve(count);
    for (const Complex l : circle_points(radius, count)) {
        FiberScanRow row;
        row.lambda = l;
        try {
            const Mat2 img = fiber_image(phi, l);
            row.f12 = img.x12;
            row.f21 = img.x21;
            usable_points.push_back(fiber_point(l).matrix);
            usable_rows.push_back(scan.rows.size());
        } catch (const OverflowGuard &) {
            row.overflow = true;
            ++scan.overflow_count;
        }
        scan.rows.push_back(row);
    }

    if (!usable_points.empty()) {
        const Automorphism f = Automorphism::diag_twist(phi);
        scan.fit = fit_constant_conjugation(f, usable_points);
        const Mat2 &n = scan.fit->best_conjugator;
        for (std::size_t k = 0; k < usable_points.size(); ++k) {
            const Mat2 &x = usable_points[k];
            const Mat2 r = apply(f, x) * n - n * x;
            scan.rows[usable_rows[k]].residual_contrib =
                frobenius_norm(r) * frobenius_norm(r);
        }
    }
    return scan;
}

// Documented header of the falsifier CSV.
inline constexpr const char *kFiberScanCsvHeader =
    "re_lambda,im_lambda,re_f12,im_f12,re_f21,im_f21,residual_contrib";

std::string fiber_scan_to_csv(const FiberScan &scan);

} // namespace specball
