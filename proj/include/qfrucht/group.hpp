#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qfrucht/qset.hpp"

namespace qfrucht {

/// A finite group given by its full multiplication table.  The identity is
/// always element 0.  Groups built from permutation generators remember the
/// permutation image of every element (used e.g. for fixed-point counts).
struct FiniteGroup {
  std::string name;
  int order = 0;
  std::vector<std::vector<int>> mul;  // mul[g][h] = g*h
  std::vector<int> inv;
  std::vector<std::string> labels;  // optional, size order or empty

  int perm_degree = 0;                   // 0 when no permutation model known
  std::vector<std::vector<int>> perms;   // per element, its permutation image

  int multiply(int g, int h) const { return mul[g][h]; }
  int inverse(int g) const { return inv[g]; }
  bool is_abelian() const;
  std::string label(int g) const;
};

/// Validate a multiplication table: Latin square, identity at index 0,
/// associativity on all triples, consistent inverses.  Throws input_error
/// with a witness on failure.
FiniteGroup group_from_table(std::vector<std::vector<int>> mul,
                             std::string name = "");

/// Closure of a set of permutations of {0..degree-1} under composition via
/// breadth-first search.  The identity gets index 0.
FiniteGroup group_from_generators(int degree,
                                  const std::vector<std::vector<int>>& gens,
                                  std::string name = "",
                                  int cap = 10000);

FiniteGroup cyclic_group(int n);

/// S3 with the fixed element order e, (12), (13), (23), (123), (132),
/// realized as permutations of {0,1,2}.
FiniteGroup symmetric_group_s3();

struct StructureReport {
  std::vector<int> center;
  std::vector<std::vector<int>> conjugacy_classes;
  std::vector<int> commutator_subgroup;
  bool is_perfect = false;
  bool is_abelian = false;
};

StructureReport structure_report(const FiniteGroup& g);

/// Conjugacy class index of each element (classes ordered by smallest member).
std::vector<int> conjugacy_class_of(const FiniteGroup& g);

}  // namespace qfrucht
