#pragma once

// Central registry of law identifiers cited by reports and `twb explain`.
// Each string names the law and shows the equation in diagrammatic order, so
// a failing check can always be traced to the axiom it discharges.

namespace twb::anchors {

inline constexpr const char* zero_section = "tangent: zero section is a retract, 0_M p_M = 1_M";
inline constexpr const char* lift_zero = "tangent: lift on the zero section, 0_M l_M = 0_M T(0_M)";
inline constexpr const char* lift_proj = "tangent: lift over the projection, l_M T(p_M) = p_M 0_M";
inline constexpr const char* naturality = "tangent: naturality of p, 0, l";
inline constexpr const char* functoriality = "tangent: T is a functor, T(1)=1 and T(fg)=T(f)T(g)";
inline constexpr const char* additive_bundle =
    "additive bundle: (p,0,+) is a commutative monoid in each fibre";
inline constexpr const char* extended_suite =
    "extended suite (instance-registered): flip involution and lift compatibilities";

inline constexpr const char* bundle_section = "bundle: zero section is a section, zq = 1_M";
inline constexpr const char* bundle_additive =
    "bundle: (q,z,sigma) is a fibrewise commutative monoid (cited-definition suite)";
inline constexpr const char* lambda_proj = "bundle: lift over the projection, l p_E = q z";
inline constexpr const char* lambda_linear = "bundle: lift is q-linear, l T(q) = q 0_M";
inline constexpr const char* lambda_coherence = "bundle: lift coherence, l l_E = l T(l)";
inline constexpr const char* universality =
    "bundle: universality of the vertical lift (the mu square is a T^n-stable pullback)";
inline constexpr const char* wide_pullbacks =
    "bundle: wide pullbacks E_k exist and are preserved by T^n";
inline constexpr const char* key_diagram =
    "key diagram: cM -> TM <- TE -> cE <- cM with linear maps (0_M,1),(T(q),q),(p_E,1),(z,z)";
inline constexpr const char* two_projections =
    "double pullback: the two projections to M are equal";
inline constexpr const char* zero_prime = "constructed bundle: z' = <1_M, z 0_E, 1_M>";
inline constexpr const char* sigma_prime =
    "constructed bundle: sigma' = 1 x_{+_M} (+_E) x_{1_E} 1 on the T_2 double pullback";
inline constexpr const char* lambda_prime =
    "constructed bundle: lambda' = 0_M x_{l_M} l_E x_{0_E} 0_M";
inline constexpr const char* classification_iso =
    "classification: <q,lambda,q> : E -> M x_TM TE x_E M is a linear isomorphism over M";
inline constexpr const char* mu_second_projection =
    "mu = <pi_1 l, pi_2 0_E> T(sigma) followed by p_E is the second projection";
inline constexpr const char* sigma_determined =
    "addition is determined: sigma = <q_2, lambda_2 (+_E)> i_1^{-1}";
inline constexpr const char* linear_map =
    "linear map: commutes with projections and vertical lifts";
inline constexpr const char* linear_derived =
    "derived: linear maps commute with zero sections and addition";
inline constexpr const char* induced_linear =
    "induced linear map: f x_{T(f)} T(g) x_g f between constructed bundles";
inline constexpr const char* correspondence =
    "correspondence: bundles <-> triples (q,z,lambda) with section, T^n-stable wide pullbacks, "
    "and <T^n q_k, T^n lambda_k, T^n q_k> isomorphisms";
inline constexpr const char* tangent_space =
    "differential object: tangent space at a point, E -> 1 with the lift pullback";
inline constexpr const char* limit_of_bundles =
    "limits of bundle diagrams: structure maps are the limits of the pointwise structure maps";
inline constexpr const char* cring_classification =
    "commutative rings: bundles over R are square-zero extensions R (+) M eps; linear maps over "
    "1_R are module homomorphisms";
inline constexpr const char* hom_counterexample =
    "not every linear map between constructed bundles is induced by a map of section data";
inline constexpr const char* cdc_structure =
    "cartesian differential instance: T(A) = A x A with Jacobian tangent maps";

}  // namespace twb::anchors
