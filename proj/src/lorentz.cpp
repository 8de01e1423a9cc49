#include "relcoll/lorentz.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/LU>

namespace relcoll {

SpacetimeMatrix::SpacetimeMatrix(int dimension)
    : entries_(Storage::Identity(dimension + 1, dimension + 1))
{
    if (dimension < 1 || dimension > kMaxDimension) {
        throw InputError("SpacetimeMatrix: unsupported dimension");
    }
}

SpacetimeMatrix::SpacetimeMatrix(Storage entries) : entries_(std::move(entries))
{
    if (entries_.rows() != entries_.cols() || entries_.rows() < 2) {
        throw InputError("SpacetimeMatrix must be square with side 1+n");
    }
}

SpacetimeMatrix SpacetimeMatrix::metric(int dimension)
{
    SpacetimeMatrix g(dimension);
    g(0, 0) = -1.0;
    return g;
}

SpacetimeMatrix operator*(SpacetimeMatrix const& a, SpacetimeMatrix const& b)
{
    if (a.dimension() != b.dimension()) {
        throw InputError("SpacetimeMatrix product: dimension mismatch");
    }
    return SpacetimeMatrix(SpacetimeMatrix::Storage(a.entries_ * b.entries_));
}

double metric_defect(SpacetimeMatrix const& lambda)
{
    auto const& m = lambda.entries();
    auto const g = SpacetimeMatrix::metric(lambda.dimension()).entries();
    SpacetimeMatrix::Storage const defect = m.transpose() * g * m - g;
    return defect.cwiseAbs().maxCoeff();
}

bool is_proper_lorentz(SpacetimeMatrix const& lambda, PhysicsConfig const& cfg)
{
    double const det = lambda.entries().determinant();
    return std::abs(det - 1.0) <= cfg.tol_algebra && metric_defect(lambda) <= cfg.tol_algebra;
}

SpacetimeMatrix boost_to_com(FourMomentum const& p, FourMomentum const& q,
                             PhysicsConfig const& cfg)
{
    int const n = cfg.dimension;
    detail::require_dimension(p, n, "p");
    detail::require_dimension(q, n, "q");

    Momentum const total = p.spatial + q.spatial;
    double const energy = p.energy + q.energy;
    double const total2 = total.squaredNorm();
    SpacetimeMatrix boost(n);
    if (std::sqrt(total2) <= cfg.tol_algebra * energy) {
        return boost;
    }

    double const root_s = std::sqrt(energy * energy - total2);
    double const gamma = energy / root_s;
    boost(0, 0) = gamma;
    for (int i = 0; i < n; ++i) {
        boost(0, i + 1) = -total(i) / root_s;
        boost(i + 1, 0) = -total(i) / root_s;
        for (int j = 0; j < n; ++j) {
            boost(i + 1, j + 1) += (gamma - 1.0) * total(i) * total(j) / total2;
        }
    }
    return boost;
}

SpacetimeMatrix invert(SpacetimeMatrix const& lambda, PhysicsConfig const& cfg)
{
    if (!is_proper_lorentz(lambda, cfg)) {
        throw ContractViolation("invert: matrix is not a proper Lorentz transformation");
    }
    // Lambda_mu^nu = g^{nu lambda} Lambda^kappa_lambda g_{kappa mu}
    auto const g = SpacetimeMatrix::metric(lambda.dimension()).entries();
    return SpacetimeMatrix(SpacetimeMatrix::Storage(g * lambda.entries().transpose() * g));
}

FourVector apply(SpacetimeMatrix const& lambda, FourVector const& x)
{
    if (x.size() != lambda.dimension() + 1) {
        throw InputError("apply: four-vector length does not match matrix side");
    }
    return lambda.entries() * x;
}

FourMomentum apply(SpacetimeMatrix const& lambda, FourMomentum const& x)
{
    FourVector const y = apply(lambda, x.components());
    return {y(0), y.tail(y.size() - 1)};
}

ComFrameResidual com_frame_residual(SpacetimeMatrix const& lambda, FourMomentum const& p,
                                    FourMomentum const& q, PhysicsConfig const& cfg)
{
    FourVector const pc = p.components();
    FourVector const qc = q.components();
    FourVector const total = apply(lambda, FourVector(pc + qc));
    FourVector const diff = apply(lambda, FourVector(pc - qc));

    auto const inv = invariants(p, q, cfg);
    FourVector target = FourVector::Zero(total.size());
    target(0) = std::sqrt(inv.s);

    return {(total - target).cwiseAbs().maxCoeff(), std::abs(diff(0))};
}

bool check_com_frame(SpacetimeMatrix const& lambda, FourMomentum const& p, FourMomentum const& q,
                     PhysicsConfig const& cfg)
{
    auto const r = com_frame_residual(lambda, p, q, cfg);
    double const tol = cfg.tol_algebra * std::max(1.0, p.energy + q.energy);
    return r.total <= tol && r.time_of_difference <= tol;
}

}  // namespace relcoll
