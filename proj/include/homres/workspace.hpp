#ifndef HOMRES_WORKSPACE_HPP
#define HOMRES_WORKSPACE_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "homres/complex.hpp"
#include "homres/module.hpp"

namespace homres {

using json = nlohmann::json;

/// A loaded, fully validated workspace document.
///
/// Schema (informal):
///   {p, algebras: {name: {kind: "quiver", vertices, arrows, relations}
///                      | {kind: "table", dim, structure, unit, radical?, simples?}},
///    modules: {name: {algebra, dim, action} | {algebra, builtin, index?}},
///    complexes: {name: {algebra, lo?, terms, diffs}},
///    tasks: [{cmd, name?, ...}], suite?: {algebra, t, add, r?, gp?, spot?}}
struct Workspace {
  Prime p = 2;
  std::map<std::string, AlgebraPtr> algebras;
  std::map<std::string, Module> modules;
  std::map<std::string, Complex> complexes;
  std::vector<json> tasks;
  std::optional<json> suite;
  /// Canonical form of the loaded document.
  json canonical;

  const AlgebraPtr& algebra(const std::string& name) const;
  const Module& module(const std::string& name) const;
  const Complex& complex(const std::string& name) const;
};

/// Builtin module kinds: regular, simple (index), projective (vertex index),
/// free (index = rank), dual-right-regular.
inline constexpr const char* kBuiltinModules[] = {"regular", "simple", "projective", "free",
                                                  "dual-right-regular"};

/// Errors carry a JSON-pointer location into the document.
Workspace parse_workspace(const json& doc);
Workspace load_workspace(const std::filesystem::path& path);
/// Canonical document: sorted keys, entries reduced mod p, zero defaults and
/// zero structure constants dropped.
json store_workspace(const Workspace& ws);
/// Text form used for files and reports.
std::string canonical_text(const json& doc);

/// Argument keys each command reads, by reference kind; used for reference
/// checking on load and by the task runner.
struct CommandSchema {
  std::string cmd;
  std::vector<std::string> algebra_refs, module_refs, module_list_refs, complex_refs;
  std::vector<std::string> map_refs;  // inline chain maps {source, target, components}
};
const std::vector<CommandSchema>& command_schemas();
const CommandSchema* find_command(const std::string& cmd);

}  // namespace homres

#endif  // HOMRES_WORKSPACE_HPP
