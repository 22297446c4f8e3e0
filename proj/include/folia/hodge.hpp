#pragma once

#include "folia/transverse.hpp"

namespace folia {

/// Quadrature nodes with Riemannian weights (density folded in). Chart:
/// composite midpoint grid; frame: the backend's group rule, or the single
/// base point carrying the total volume when only invariant data exists.
struct QuadratureNodes {
  std::vector<Point> pts;
  std::vector<double> weights;
};

QuadratureNodes quadrature_nodes(const Backend& M, int resolution);

/// Finite-dimensional ansatz for a degree of the basic complex: basis forms,
/// their L2 Gram matrix, and a provenance note naming how they were built.
struct AnsatzSpace {
  int degree = 0;
  std::vector<FormField> basis;
  MatrixXd gram;
  std::string provenance;

  int size() const { return static_cast<int>(basis.size()); }
};

/// Builds an ansatz from candidate forms. With subspace_filter the basic
/// subspace is extracted from the candidate span by a sampled SVD (needed
/// when no individual candidate is basic); otherwise each candidate must
/// pass the basicness test itself. Linearly dependent candidates are
/// reduced through the Gram spectrum.
AnsatzSpace build_ansatz(const FoliatedManifold& fm, int degree,
                         const std::vector<FormField>& candidates,
                         bool subspace_filter, const QuadratureNodes& nodes,
                         const std::vector<Point>& samples, std::string provenance,
                         double basic_tol = 1e-8, double rank_rel_tol = 1e-9);

struct FieldAnsatz {
  std::vector<VectorField> basis;
  std::string provenance;
  double transverse_residual = 0.0;

  int size() const { return static_cast<int>(basis.size()); }
};

/// Transverse-field ansatz; with subspace_filter the transverse subspace is
/// extracted from the candidate span, otherwise candidates must classify as
/// transverse themselves.
FieldAnsatz build_field_ansatz(const FoliatedManifold& fm,
                               const std::vector<VectorField>& candidates,
                               bool subspace_filter,
                               const std::vector<Point>& samples,
                               std::string provenance, double tol = 1e-8);

/// The assembled basic complex on the ansatz spaces in degrees 0, 1, 2.
struct HodgeSolution {
  MatrixXd D0, D1;            // d_B matrices
  MatrixXd gram0, gram1, gram2;
  MatrixXd delta1, delta2;    // gram-adjoints of D0, D1
  MatrixXd laplacian1;        // Delta_B on degree 1
  VectorXd eigenvalues;       // spectrum of Delta_B (ascending)
  MatrixXd harmonic_basis;    // kernel coefficient vectors (columns)
  int b1_harmonic = 0;
  int b1_cohomological = 0;   // dim ker D1 - rank D0 on the same ansatz
  double closure_residual = 0.0;  // worst relative d-closure defect
  double eigen_threshold = 0.0;
};

/// Assembles d_B, delta_B and Delta_B; throws naming the offending basis
/// element if the ansatz is not closed under d.
HodgeSolution build_basic_complex(const FoliatedManifold& fm, const AnsatzSpace& a0,
                                  const AnsatzSpace& a1, const AnsatzSpace& a2,
                                  const QuadratureNodes& nodes,
                                  double closure_tol = 1e-6,
                                  double eigen_rel_tol = 1e-7);

/// Nullspace of a sampled linear map on a field ansatz.
struct SubspaceResult {
  MatrixXd basis;  // columns: coefficient vectors in the ansatz
  int dimension = 0;
  VectorXd singular_values;
  double threshold = 0.0;
};

SubspaceResult classify_killing(const FoliatedManifold& fm, const FieldAnsatz& ansatz,
                                const std::vector<Point>& samples,
                                double rel_tol = 1e-7);

SubspaceResult classify_parallel(const FoliatedManifold& fm, const FieldAnsatz& ansatz,
                                 const std::vector<Point>& samples,
                                 double rel_tol = 1e-7);

/// Requires a harmonic foliation (the basic-harmonic criterion is invalid
/// otherwise) and throws if the flag says it is not.
SubspaceResult classify_basic_harmonic(const FoliatedManifold& fm,
                                       const FieldAnsatz& ansatz,
                                       const std::vector<Point>& samples,
                                       bool foliation_harmonic,
                                       double rel_tol = 1e-7);

VectorField ansatz_field(const FieldAnsatz& ansatz, const VectorXd& coeffs);

/// Empirical check of the Bochner-type statements tying the classifier
/// subspaces, the transverse Ricci sign and b1. Checks whose curvature
/// hypothesis fails are marked not applicable rather than failed.
struct BochnerCheck {
  double ric_min = 0.0;  // smallest transverse Ricci eigenvalue over samples
  double ric_max = 0.0;
  bool semi_positive = false;      // Ric^T >= 0 everywhere (sampled)
  bool positive_somewhere = false; // and > 0 at some sample
  bool ricci_flat = false;         // Ric^T = 0 everywhere (sampled)

  double inclusion_angle = 0.0;    // basic harmonic vs parallel subspace
  bool inclusion_applicable = false;
  bool inclusion_holds = false;    // harmonic subset of parallel

  bool vanishing_applicable = false;  // positive case: both dims must be 0
  bool vanishing_holds = false;

  bool b1_bound_applicable = false;  // b1 <= codim
  bool b1_bound_holds = false;

  bool flat_equality_applicable = false;  // dim iso = b1 in the flat case
  bool flat_equality_holds = false;

  int b1 = 0, codim = 0;
  int dim_killing = 0, dim_parallel = 0, dim_harmonic = 0;
};

BochnerCheck bochner_theorem_check(const FoliatedManifold& fm,
                                   const SubspaceResult& killing,
                                   const SubspaceResult& parallel,
                                   const SubspaceResult& harmonic, int b1,
                                   const std::vector<Point>& samples,
                                   double ric_tol = 1e-8, double angle_tol = 1e-6);

/// Expansion coefficients of a 1-form in the degree-1 ansatz plus the
/// relative projection defect.
std::pair<VectorXd, double> expand_in_ansatz(const FoliatedManifold& fm,
                                             const AnsatzSpace& a1, const FormField& w,
                                             const QuadratureNodes& nodes);

/// sup_p |delta_B omega_X + Div_T X| for a transverse field X whose dual
/// form lies in the degree-1 ansatz.
double codifferential_residual(const FoliatedManifold& fm, const HodgeSolution& sol,
                               const AnsatzSpace& a0, const AnsatzSpace& a1,
                               const VectorField& X, const QuadratureNodes& nodes,
                               const std::vector<Point>& samples);

/// sup_p |Delta_B f + Delta_T f| for a degree-0 ansatz element given by its
/// coefficients (the two Laplacians differ by a sign on basic functions).
double basic_laplacian_residual(const FoliatedManifold& fm, const HodgeSolution& sol,
                                const AnsatzSpace& a0, const VectorXd& f_coeffs,
                                const std::vector<Point>& samples);

/// <d_B w, e> - <w, delta_B e> over all ansatz pairs (adjointness defect).
double adjointness_residual(const HodgeSolution& sol);

/// Largest principal angle between the harmonic space and ker D1
/// intersected with ker delta1, measured in the gram1 inner product.
double harmonic_versus_closed_coclosed_angle(const HodgeSolution& sol);

ScalarField form0_as_scalar(const FormField& w);

}  // namespace folia
