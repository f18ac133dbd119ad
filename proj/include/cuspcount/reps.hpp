#pragma once

// Parameter-level dictionary for cuspidal classes of an inner form GL_m(D)
// over a p-adic field with residue cardinality q: contexts derived from an
// endoclass, characteristic-zero parameters x (full degree over the D'
// residue field), modular parameters y (regular elements), and all their
// numerical invariants.

#include <optional>
#include <vector>

#include "cuspcount/arith.hpp"
#include "cuspcount/cyclic.hpp"

namespace cuspcount {

struct GroundData {
    Int q;        // residue cardinality, a prime power
    Int ell;      // the banned prime, not dividing q
    Int p;        // prime radical of q
    unsigned q_exp = 1; // q = p^q_exp
};

GroundData make_ground(const Int& q, const Int& ell);

struct InnerForm {
    unsigned m = 1;
    unsigned d = 1; // reduced degree of D; d = 1 is the split case

    unsigned n() const { return m * d; }
    bool operator==(const InnerForm&) const = default;
};

/// Abstract endoclass: degree, residue degree, normalized level. Realizability
/// by an actual simple character is the caller's responsibility.
struct EndoclassRecord {
    unsigned deg = 1;     // g
    unsigned res_deg = 1; // f, divides g
    Rat level = 0;

    static EndoclassRecord zero() { return {}; }
    bool is_zero() const { return deg == 1 && res_deg == 1 && level == 0; }
    unsigned ramification() const { return deg / res_deg; }
    bool operator==(const EndoclassRecord&) const = default;
};

/// Derived arithmetic frame for one (inner form, endoclass) pair. All
/// parameters of the pair live in the single ambient of degree m'd' over the
/// field with q_E elements.
struct FieldContext {
    GroundData ground;
    InnerForm form;
    EndoclassRecord endo;
    unsigned d_prime = 1; // d / (d, g)
    unsigned m_prime = 1; // m (d, g) / g
    Int q_E;              // q^res_deg
    Int q_Dprime;         // q_E^d_prime
    AmbientField ambient; // base q_E, degree m_prime * d_prime

    /// m d f / g = res_deg * m' d'.
    unsigned f_rho() const { return endo.res_deg * m_prime * d_prime; }
};

FieldContext make_context(const GroundData& ground, const InnerForm& form,
                          const EndoclassRecord& endo);

struct AdicInvariants {
    unsigned deg_x = 1;  // degree of x over q_E
    unsigned s_adic = 1; // m'd' / deg_x, coprime to m
    unsigned f_rho = 1;
    unsigned n_adic = 1; // f_rho / s_adic = res_deg * deg_x
};

/// Characteristic-zero cuspidal parameter: x of degree m' over q_Dprime.
struct AdicCuspidal {
    FieldContext ctx;
    Element x;
    AdicInvariants inv;
};

/// Throws InvalidArgument when x is not of degree m' over q_Dprime
/// (not a cuspidal parameter of this context).
AdicCuspidal make_adic(const FieldContext& ctx, const Element& x);

AdicInvariants adic_invariants(const AdicCuspidal& rho);

struct ModInvariants {
    unsigned deg_y = 1; // degree of y over q_E
    unsigned m_dd = 1;  // degree of y over q_Dprime; m' = k * m_dd
    unsigned k = 1;     // supercuspidal support size
    unsigned s = 1;     // Galois stabilizer order, divides d'
    unsigned n_mod = 1; // largest divisor of f_rho/s coprime to ell
    unsigned f_rho = 1;
    Int epsilon;        // order of q^n_mod mod ell
    Int e_y;            // order of q_Dprime^m_dd mod ell; k is 1 or e_y * ell^i
};

/// Modular cuspidal parameter: regular element y whose support size k passes
/// the existence criterion (k = 1, or k = e_y * ell^i).
struct ModCuspidal {
    FieldContext ctx;
    Element y;
    ModInvariants inv;
};

/// Throws InvalidArgument if order(y) is divisible by ell or the support-size
/// criterion fails; throws ConsistencyFailure if the criterion and the
/// witness search disagree (checked whenever the modulus is under the
/// cross-check cap).
ModCuspidal make_mod(const FieldContext& ctx, const Element& y);

/// Non-throwing version of the validity test behind make_mod.
bool is_valid_mod_parameter(const FieldContext& ctx, const Element& y);

/// Brute-force side of the validity test: the first ell-power-order z (in
/// ascending exponent order) with degree_over(y z, q_Dprime) == m_prime, if
/// any. Searches exactly the ell-primary component of the ambient group.
std::optional<Element> parameter_witness(const FieldContext& ctx, const Element& y,
                                         std::uint64_t cap = global_caps().enumeration);

ModInvariants mod_invariants(const ModCuspidal& sigma);

/// True iff the class of sigma is fixed by the i-th unramified twist, i.e.
/// epsilon divides i.
bool twist_fixed(const ModCuspidal& sigma, const Int& i);

struct Reduction {
    ModCuspidal sigma;
    unsigned a = 1; // reduction length
    unsigned w = 1; // k(sigma) * a = deg_x / deg_y
};

/// Reduction of x: y is the regular part of x; a = s(sigma)/s_adic and
/// w = deg_x/deg_y are verified to agree with w = k a.
Reduction reduce(const AdicCuspidal& rho);

/// Whether x and the witness element generate the same class: both reduce to
/// Frobenius-conjugate parameters over q_Dprime.
bool same_class(const ModCuspidal& a, const ModCuspidal& b);

/// Canonical exponent (minimal in the q_Dprime-Frobenius orbit) identifying
/// the class of sigma.
Int canonical_exponent(const ModCuspidal& sigma);

/// All characteristic-zero parameters of the context, one canonical
/// representative per class (q_Dprime-orbit), ascending.
std::vector<AdicCuspidal> enumerate_adic(const FieldContext& ctx,
                                         std::uint64_t cap = global_caps().enumeration);

/// All valid modular parameters of the context, one canonical representative
/// per class, ascending.
std::vector<ModCuspidal> enumerate_mod(const FieldContext& ctx,
                                       std::uint64_t cap = global_caps().enumeration);

} // namespace cuspcount
