#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "reflexa/module.hpp"

namespace reflexa {

struct Diagnostic {
  std::size_t line = 0, column = 0;  // 1-based; 0 when unknown
  std::string message;
  std::string to_string(const std::string& file) const;
};

struct Job {
  std::vector<std::string> args;
  std::size_t line = 0;
};

// Matrices in workspace files use row vectors: an arrow matrix is
// dims[src] x dims[dst] and acts by v -> v * M. Vertices are 1-based.
struct Workspace {
  std::map<std::string, AlgebraPtr> algebras;
  std::map<std::string, Module> modules;
  // Internal basis of each module in file coordinates, one column per vector.
  std::map<std::string, Matrix> module_basis;
  std::map<std::string, ModuleMap> maps;
  std::vector<Job> jobs;
};

struct WorkspaceParse {
  std::optional<Workspace> workspace;
  std::vector<Diagnostic> diagnostics;
};

// Never throws on malformed input; every problem becomes a diagnostic.
WorkspaceParse parse_workspace(const std::string& text);

// Names usable without a workspace: the standard corpus over F_2 under its
// display names (kA2, kA3, k[x]/x^2, ..., random/1..5).
AlgebraPtr builtin_algebra(const std::string& name);
std::vector<std::string> builtin_algebra_names();

// Algebra by workspace name or builtin; throws ParseError when unknown.
AlgebraPtr resolve_algebra(const Workspace& ws, const std::string& name);
// Module by workspace name, or S<i>@A, P<i>@A, I<i>@A, Lambda@A, DLambda@A
// (left modules, 1-based vertices). Throws ParseError when unknown.
Module resolve_module(const Workspace& ws, const std::string& name);
// Map by workspace name, or cover:<module>, envelope:<module>, eval:<module>.
ModuleMap resolve_map(const Workspace& ws, const std::string& name);

}  // namespace reflexa
