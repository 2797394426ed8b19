#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "oforge/operad.hpp"
#include "oforge/pushout.hpp"

namespace oforge {

// One (arity, genus) cell of a two-sided count comparison.
struct CountCell {
  int arity = 0;
  int genus = 0;
  std::uint64_t lhs = 0;
  std::uint64_t rhs = 0;
};

// Outcome of one verification check. `json()` is byte-stable for fixed check
// name, bounds, and seed: it contains no timestamps or machine identifiers.
// Wall time lives in `elapsed_seconds` for stderr diagnostics only.
struct VerificationReport {
  std::string check;
  Bounds bounds;
  std::string status = "PASS";  // PASS | FAIL | UNDECIDED
  std::string lhs_label;
  std::string rhs_label;
  std::uint64_t lhs_total = 0;
  std::uint64_t rhs_total = 0;
  std::vector<CountCell> cells;
  std::uint64_t checked = 0;       // individual comparisons performed
  std::string counterexample;      // smallest failure: vertex count, then code
  std::string witness;             // one matched pair, as evidence on PASS
  std::vector<std::string> notes;  // SKIPPED entries and similar
  double elapsed_seconds = 0.0;    // not part of json()
  int counterexample_rank = 2147483647;

  bool pass() const { return status == "PASS"; }
  std::string json() const;

  // Keeps the smallest counterexample seen (vertex count, then code order)
  // and flips the status to FAIL.
  void fail(int vertex_count, const std::string& description);
};

// Canonical codes agree with explicit isomorphism search on trivially
// decorated trees (nullary vertices allowed): one code per isomorphism
// class, distinct codes across classes.
VerificationReport verify_canonical_codes(int max_vertices, int max_tree_arity,
                                          int max_vertex_arity);

// Free-operad elements over surface decorations match, labeled shape by
// labeled shape, an independent count of decoration assignments, and their
// seam-erased dual graphs collapse exactly the seam data.
VerificationReport verify_free_split_bijection(const Bounds& b);

// Normal forms of the surface amalgam biject with stable tree-like dual
// graphs in every (arity, genus) cell, and the seam-erasing bijection
// commutes with partial composition on seeded sample pairs.
VerificationReport verify_geometric_pushout(const Bounds& b);

// Normal forms of the weighted amalgam flatten bijectively onto protected
// weighted graph trees, compatibly with composition on seeded sample pairs.
VerificationReport verify_w_colimit(const Bounds& b);

// Capping off the framing's extra output retracts it: cap∘fr is the identity
// on all enumerated stable marked skeletons; the empty arity-1 genus-0 cell
// is reported SKIPPED.
VerificationReport verify_fr_cap_retract(const Bounds& b);

// The closure oracle and the rewrite engine agree: within the bounded
// closure of each seeded start element, all members share one normal form
// and equal_in_pushout returns True; across closures with distinct
// invariants it returns False.
VerificationReport verify_closure_agreement(const PushoutSystem& sys,
                                            const Bounds& b, int starts);

// Cluster counting agrees with one-edge-at-a-time contraction on seeded
// weighted surface trees.
VerificationReport verify_hd_contract(const Bounds& b, int samples);

// Random maximal rewrite orders reach a single code per seeded start element.
VerificationReport verify_confluence(const PushoutSystem& sys, const Bounds& b,
                                     int starts);

// Seeded random elements of the amalgam: trees over surface and modulus
// decorations for the plain system, boxed weighted pieces for the weighted
// one. Deterministic for fixed bounds (grid, seed, count).
std::vector<Tree> seeded_amalgam_elements(const PushoutSystem& sys, const Bounds& b,
                                          int count);

// The four CLI-visible checks, by kebab-case name; nullopt for unknown names.
std::optional<VerificationReport> run_check(const std::string& name, const Bounds& b);
std::vector<std::string> check_names();

}  // namespace oforge
