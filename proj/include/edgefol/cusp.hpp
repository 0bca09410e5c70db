#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <initializer_list>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "error.hpp"

namespace edgefol {

enum class CuspClass { NoCusp, Cusp23, Cusp34, Cusp345 };

constexpr std::string_view to_string(CuspClass c) noexcept
{
    switch (c) {
    case CuspClass::NoCusp: return "NoCusp";
    case CuspClass::Cusp23: return "Cusp23";
    case CuspClass::Cusp34: return "Cusp34";
    case CuspClass::Cusp345: return "Cusp345";
    }
    return "NoCusp";
}

struct CuspConfig {
    double window = 0.0;          ///< parameter half-width; 0 uses `min_side` samples each side
    int min_side = 25;
    double vanish_tol = 1e-3;     ///< relative to the window extent of the curve
    double independence_tol = 1e-3;
    double noise_factor = 10.0;   ///< multiples of the coefficient standard error
};

/// Scaled Taylor coefficients c_k = gamma^(k)(t0) w^k / k!, k = 0..5, one
/// column per coordinate row, from a least-squares quintic on [t0 - w, t0 + w].
struct CuspFit {
    Eigen::MatrixXd coeffs;    ///< 6 x dim
    Eigen::VectorXd std_error; ///< standard error of each coefficient vector
    double window = 0.0;
    double extent = 0.0;    ///< largest coordinate range over the window
    int left = 0, right = 0;
};

namespace detail {

inline bool independent(const std::vector<Eigen::VectorXd>& vs, double tol)
{
    if (vs.empty())
        return true;
    const Eigen::Index dim = vs.front().size();
    if (static_cast<Eigen::Index>(vs.size()) > dim)
        return false;
    Eigen::MatrixXd m(dim, static_cast<Eigen::Index>(vs.size()));
    for (std::size_t k = 0; k < vs.size(); ++k) {
        const double n = vs[k].norm();
        if (n == 0.0)
            return false;
        m.col(static_cast<Eigen::Index>(k)) = vs[k] / n;
    }
    const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues();
    for (Eigen::Index k = 1; k < sv.size(); ++k)
        if (sv(k) < tol * sv(k - 1))
            return false;
    return true;
}

} // namespace detail

/// `points` holds one row per sample; `t` the matching parameter values.
inline CuspFit fit_cusp_window(std::span<const double> t, const Eigen::MatrixXd& points, double t0,
                               const CuspConfig& cfg = {})
{
    const Eigen::Index n = points.rows();
    if (static_cast<Eigen::Index>(t.size()) != n || n == 0)
        throw Error(ErrorKind::WindowTooSmall, "parameter and sample counts differ or are empty");

    Eigen::Index centre = 0;
    for (Eigen::Index i = 1; i < n; ++i)
        if (std::abs(t[static_cast<std::size_t>(i)] - t0) < std::abs(t[static_cast<std::size_t>(centre)] - t0))
            centre = i;

    double w = cfg.window;
    if (w <= 0.0) {
        if (centre < cfg.min_side || centre + cfg.min_side >= n)
            throw Error(ErrorKind::WindowTooSmall, "fewer than the required samples on one side of t0");
        const auto c = static_cast<std::size_t>(centre);
        const auto k = static_cast<std::size_t>(cfg.min_side);
        w = std::max(std::abs(t[c + k] - t0), std::abs(t[c - k] - t0));
    }

    CuspFit fit;
    fit.window = w;
    std::vector<Eigen::Index> rows;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double dt = t[static_cast<std::size_t>(i)] - t0;
        if (std::abs(dt) <= w * (1.0 + 1e-12)) {
            rows.push_back(i);
            if (dt < 0)
                ++fit.left;
            else if (dt > 0)
                ++fit.right;
        }
    }
    if (fit.left < cfg.min_side || fit.right < cfg.min_side)
        throw Error(ErrorKind::WindowTooSmall, "fewer than the required samples on one side of t0");

    const Eigen::Index m = static_cast<Eigen::Index>(rows.size());
    const Eigen::Index dim = points.cols();
    Eigen::MatrixXd V(m, 6), Y(m, dim);
    for (Eigen::Index r = 0; r < m; ++r) {
        const double tau = (t[static_cast<std::size_t>(rows[static_cast<std::size_t>(r)])] - t0) / w;
        double p = 1.0;
        for (int k = 0; k < 6; ++k) {
            V(r, k) = p;
            p *= tau;
        }
        Y.row(r) = points.row(rows[static_cast<std::size_t>(r)]);
    }
    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(V);
    const Eigen::MatrixXd R = qr.matrixR().topLeftCorner(6, 6).template triangularView<Eigen::Upper>();
    const double rmax = R.diagonal().cwiseAbs().maxCoeff();
    const double rmin = R.diagonal().cwiseAbs().minCoeff();
    if (qr.rank() < 6 || rmin < 1e-10 * rmax)
        throw Error(ErrorKind::FitIllConditioned, "quintic fit is rank deficient on this window");
    fit.coeffs = qr.solve(Y);

    const Eigen::MatrixXd resid = Y - V * fit.coeffs;
    const Eigen::MatrixXd gram_inv = (V.transpose() * V).inverse();
    fit.std_error.resize(6);
    for (int k = 0; k < 6; ++k) {
        double acc = 0.0;
        for (Eigen::Index c = 0; c < dim; ++c)
            acc += resid.col(c).squaredNorm() / static_cast<double>(std::max<Eigen::Index>(m - 6, 1)) * gram_inv(k, k);
        fit.std_error(k) = std::sqrt(acc);
    }

    for (Eigen::Index c = 0; c < dim; ++c)
        fit.extent = std::max(fit.extent, Y.col(c).maxCoeff() - Y.col(c).minCoeff());
    return fit;
}

/// gamma' and gamma'' vanish at the relative tolerance; independence is judged
/// on unit directions, with coefficients inside the fit noise treated as zero.
inline CuspClass classify_cusp_fit(const CuspFit& fit, const CuspConfig& cfg = {})
{
    const double scale = std::max(fit.extent, 1e-300);
    auto c = [&](int k) { return Eigen::VectorXd(fit.coeffs.row(k).transpose()); };
    auto vanishes = [&](int k) { return c(k).norm() <= cfg.vanish_tol * scale; };
    auto resolved = [&](int k) {
        return c(k).norm() > std::max(cfg.noise_factor * fit.std_error(k), 1e-13 * scale);
    };
    auto independent = [&](std::initializer_list<int> ks) {
        std::vector<Eigen::VectorXd> vs;
        for (int k : ks) {
            if (!resolved(k))
                return false;
            vs.push_back(c(k));
        }
        return detail::independent(vs, cfg.independence_tol);
    };
    const Eigen::Index dim = fit.coeffs.cols();

    if (!vanishes(1))
        return CuspClass::NoCusp;
    if (!vanishes(2))
        return independent({2, 3}) ? CuspClass::Cusp23 : CuspClass::NoCusp;
    if (!independent({3, 4}))
        return CuspClass::NoCusp;
    if (dim < 3 || !independent({3, 4, 5}))
        return CuspClass::Cusp34;
    return CuspClass::Cusp345;
}

inline CuspClass detect_cusp_order(std::span<const double> t, const Eigen::MatrixXd& points, double t0,
                                   const CuspConfig& cfg = {})
{
    return classify_cusp_fit(fit_cusp_window(t, points, t0, cfg), cfg);
}

} // namespace edgefol
