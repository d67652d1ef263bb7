#pragma once

#include <string>
#include <vector>

#include "nlobs/field.hpp"
#include "nlobs/kernel.hpp"

namespace nlobs {

enum class OperatorKind {
    linear,
    pucci_plus,
    pucci_minus,
    pucci_star_plus,
    pucci_star_minus,
    infsup
};

/// A nonlocal operator: a single linear kernel, an extremal (Pucci-type)
/// operator over the comparable-kernel class or its homogeneous subclass,
/// or a finite inf-sup of linear operators.
struct OperatorSpec {
    OperatorKind kind = OperatorKind::linear;
    EllipticityParams ell;
    KernelSpec kernel;                               // linear
    std::vector<std::vector<KernelSpec>> families;   // infsup: min over rows of max in row
    int sectors = 16;                                // angular resolution for the homogeneous class

    bool is_linear() const { return kind == OperatorKind::linear; }
    std::string name() const;
};

/// Discrete quadrature of integrals of second differences against
/// |y|^{-n-2s}: folded lattice offsets with positive weights, plus a
/// closed-form tail mass beyond the truncation radius.
///
/// In 1D the weights integrate the kernel exactly against a piecewise
/// interpolant of the second difference (quadratic on the innermost cell,
/// linear beyond), which keeps the scheme accurate up to s near 1.  In 2D
/// the weights are exact-kernel cell masses (near cells subsampled) with a
/// second-moment correction for the center cell folded into the four axis
/// neighbors.  Every weight is strictly positive, so any operator built on
/// the scheme is monotone.
struct QuadratureScheme {
    struct Offset {
        std::array<long, 2> k;  // canonical representative of the pair {k, -k}
        double pw;              // folded pure-power weight (both cells)
        double r;               // |k| * h
        int sector;             // folded angular sector in [0, m_half)
    };

    int dim = 1;
    double h = 0.0;
    double s = 0.5;
    double r0 = 0.0;      // lattice truncation radius (= M*h in 1D)
    int m_half = 1;       // folded sector count (1D: 1)
    std::vector<Offset> offsets;
    double tail_pw = 0.0;           // integral of |y|^{-n-2s} over {|y| > r0}
    std::vector<double> dir_theta;  // canonical sector midpoint directions

    double power_weight_sum() const;
};

QuadratureScheme build_scheme(const Grid& grid, double s, int m_half);

/// Per-kernel quadrature data derived from a scheme: the pointwise
/// multiplier K(y)|y|^{n+2s} per offset and the closed-form tail of K.
struct KernelWeights {
    std::vector<double> mult;   // per scheme offset
    double tail_mult = 0.0;     // kernel tail mass = tail_mult * tail_pw
    bool has_closed_tail = true;
    KernelSpec kernel;          // retained for pointwise tail-shell evaluation
};

/// Evaluates second-difference quadratures of every supported operator on
/// a fixed grid.  Construction precomputes the scheme; binding an operator
/// precomputes its kernel weight tables.  Evaluation is a pure function of
/// (field, node) with a fixed summation order.
class NonlocalEvaluator {
  public:
    NonlocalEvaluator(const Grid& grid, double s, int m_half, double tol_tail);

    const QuadratureScheme& scheme() const { return scheme_; }
    const Grid& grid() const { return *grid_; }
    double tol_tail() const { return tol_tail_; }

    KernelWeights bind_kernel(const KernelSpec& k) const;

    /// Quadrature of int delta_u(x,y) K(y) dy at one node.
    double eval_linear(const Field& u, const KernelWeights& kw, std::size_t node) const;
    /// Extremal operator over the comparable-kernel class (sign per term).
    double eval_pucci(const Field& u, const EllipticityParams& p, bool plus,
                      std::size_t node) const;
    /// Extremal operator over the homogeneous subclass (sign per sector).
    double eval_pucci_star(const Field& u, const EllipticityParams& p, bool plus,
                           std::size_t node) const;

    /// Upper bound for the diagonal coefficient of -I at any node
    /// (used for pseudo-time stability and scalar bracketing).
    double diag_bound_linear(const KernelWeights& kw) const;
    double diag_bound_pucci(const EllipticityParams& p) const;

    /// Analytic bound on the neglected tail for a field with no exterior
    /// data: 4 * sup|u| * tail_mass(r0).
    double tail_bound_none(double sup_u, double sup_mult) const;

  private:
    struct TailTerms;
    void collect_tail(const Field& u, double u0, const Point& x, TailTerms& out) const;

    const Grid* grid_;
    QuadratureScheme scheme_;
    double tol_tail_;
    double shell_ratio_ = 1.04;  // geometric growth of tail shells (callable exterior)
};

/// A bound operator: spec + evaluator tables, ready for repeated application.
class BoundOperator {
  public:
    BoundOperator(const NonlocalEvaluator& ev, const OperatorSpec& spec);

    const OperatorSpec& spec() const { return spec_; }
    const NonlocalEvaluator& evaluator() const { return *ev_; }

    /// I u at a single node.
    double eval(const Field& u, std::size_t node) const;
    /// I u on a node set; other entries of the result are zero.
    Field apply(const Field& u, const std::vector<std::size_t>& nodes) const;
    /// Upper bound for the diagonal coefficient of -I.
    double diag_bound() const;

  private:
    const NonlocalEvaluator* ev_;
    OperatorSpec spec_;
    std::vector<KernelWeights> kw_;       // linear: 1; infsup: one per member, row-major
    std::vector<std::size_t> row_sizes_;  // infsup row lengths
};

/// int delta_u(x,y) K(y) dy on the given nodes (default: interior nodes).
/// Transient convenience wrapper over NonlocalEvaluator.
Field apply_linear(const Field& u, const KernelSpec& k, double tol_tail);
Field apply_pucci(const Field& u, const EllipticityParams& p, bool plus, double tol_tail);
Field apply_pucci_star(const Field& u, const EllipticityParams& p, bool plus, int sectors,
                       double tol_tail);

struct EllipticityReport {
    bool pass = true;
    std::size_t checked = 0;
    double worst_low = 0.0;   // most negative margin (Iu-Iv) - M^-(u-v)
    double worst_high = 0.0;  // most negative margin M^+(u-v) - (Iu-Iv)
    std::vector<std::string> violations;
};

/// Verifies M^-(u-v) <= Iu - Iv <= M^+(u-v) at every interior node.
EllipticityReport ellipticity_test(const OperatorSpec& I, const Field& u, const Field& v,
                                   double tol);

}  // namespace nlobs
