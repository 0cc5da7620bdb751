#pragma once

#include <optional>
#include <string>
#include <vector>

#include "strata/linalg.hpp"

namespace strata {

// Exact congruence invariants of a square matrix over Q(zeta_N).
struct FormInvariants {
  int n = 0;
  long rank = 0;
  long sym_rank = 0;    // rank(B + B^T)
  long skew_rank = 0;   // rank(B - B^T)
  long radical_dim = 0; // dim(ker B  cap  ker B^T)
  // characteristic polynomial of B^{-T} B (low -> high), nonsingular only
  std::optional<std::vector<Cyclo>> cosquare_charpoly;
};
FormInvariants form_invariants(const CycMat& b);

// first differing invariant name, if any
std::optional<std::string> invariant_mismatch(const FormInvariants& a,
                                              const FormInvariants& b);

enum class Canon2Tag { Zero, Bpq, C };

struct Canon2 {
  Canon2Tag tag = Canon2Tag::Zero;
  // normalized, swap-reduced projective pair for Bpq (exact when available)
  std::optional<std::pair<Cyclo, Cyclo>> pq;
  // complete class invariant even when pq needs roots outside the field:
  // trace of the cosquare for nonsingular forms
  std::optional<Cyclo> cosquare_trace;
  std::optional<CycMat> witness;  // P with P^T B P == canonical
  CycMat canonical;               // valid when witness or pq present
  bool flagged = false;           // witness or parameters left the field
  std::string note;
};
Canon2 canon2(const CycMat& b);

enum class Canon3Tag { Zero, B1, B2, B3, B4, B5, B6 };
std::string canon3_tag_name(Canon3Tag t);

struct Canon3 {
  Canon3Tag tag = Canon3Tag::Zero;
  std::optional<std::pair<Cyclo, Cyclo>> pq;  // B1/B2 parameters
  std::optional<Cyclo> cosquare_trace;
  // corresponding C-list label (C1..C6 with same parameters), per the
  // verified correspondence
  std::string c_label;
  std::optional<CycMat> witness;
  CycMat canonical;
  bool flagged = false;
  std::string note;
};
Canon3 canon3(const CycMat& b);

CycMat canonical2_matrix(Canon2Tag tag, const Cyclo& p, const Cyclo& q);
CycMat canonical3_matrix(Canon3Tag tag, const Cyclo& p, const Cyclo& q);

struct CogredienceVerdict {
  enum class Tag { Witness, Refuted, Inconclusive } tag = Tag::Inconclusive;
  std::optional<CycMat> p;  // exact, verified: P^T B P == C
  std::string detail;       // refuting invariant or note
};
CogredienceVerdict are_cogredient(const CycMat& b, const CycMat& c,
                                  int budget = 24, uint64_t seed = 0);

// scaled congruence P^T B P == c C with c != 0, for radical-free essentials
// of size <= 3; exact constructive path, nullopt if not found in the field
std::optional<std::pair<CycMat, Cyclo>> scaled_congruence(const CycMat& b,
                                                          const CycMat& c);

// floating-point candidate from random starts; never verified here
std::optional<Eigen::MatrixXcd> congruence_numeric_search(const CycMat& b,
                                                          const CycMat& c,
                                                          int budget,
                                                          uint64_t seed);

}  // namespace strata
