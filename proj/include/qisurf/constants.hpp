#pragma once

#include <stdexcept>

namespace qisurf {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Radii used by the obstruction certifier, kept as fixed ratios of a
// configurable base R. The asymptotic regime uses R = 400*M^5; small R
// makes desk-scale runs possible.
struct RadiusLadder {
    double R = 1.0;

    double r_proj() const { return 2.0 * R; }
    double r_near() const { return 2.1 * R; }
    double r_tree() const { return 4.1 * R; }
    double r_span() const { return 4.25 * R; }
    double g_min() const { return 8.5 * R; }

    static RadiusLadder asymptotic(double M);

    // Integer hop radii. Rounding the real ladder at small R would make the
    // candidate interval [2R+1, 2.1R] empty, so the hop ladder keeps the
    // structural identities instead: near = proj + 1 and tree = near + proj.
    int hop_base() const;
    int hop_proj() const { return 2 * hop_base(); }
    int hop_near() const { return 2 * hop_base() + 1; }
    int hop_tree() const { return hop_near() + hop_proj(); }
    int hop_span() const { return 2 * hop_near() + 1; }
    // Smallest girth for which every radius-hop_tree ball is guaranteed acyclic.
    int girth_for_unique_projection() const { return 2 * hop_tree() + 2; }
};

struct QiConstants {
    double epsilon = 0.0;      // 1/(33*M^2)
    double girth_bound = 0.0;  // 3400*M^5*K
    RadiusLadder ladder;       // base 400*M^5
    bool degenerate = false;   // K == 0 forces girth_bound == 0
};

// Closed-form constants for a claimed (M,A)-quasi-isometry with systole
// target K. Rejects M < 1, A < 0 or K < 0.
QiConstants qi_constants(double M, double A, double K);

// log_3 of the genus bound for the compact construction at scale M (taking
// K = M): a 4-regular graph of girth g on at most 3^g vertices yields genus
// at most 3^g, with g = 3400*M^6. Returned in log form to avoid overflow.
double genus_bound_log3(double M);

}  // namespace qisurf
