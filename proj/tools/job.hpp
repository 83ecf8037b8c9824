#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "relhyp/cayley_abels.hpp"
#include "relhyp/complexes.hpp"
#include "relhyp/fineness.hpp"
#include "relhyp/json_io.hpp"
#include "relhyp/small_cancellation.hpp"

namespace relhyp::cli {

inline constexpr const char* kVersion = "1.0.0";

// Parsed job file plus typed accessors that report schema errors by path.
class Job {
 public:
  Job(Json spec, std::filesystem::path out_dir);

  const Json& spec() const { return spec_; }
  const std::string& command() const { return command_; }
  const Json& params() const { return params_; }

  int int_param(const char* key, std::optional<int> fallback = std::nullopt) const;
  bool bool_param(const char* key, bool fallback) const;
  std::vector<int> int_list(const char* key, std::optional<std::vector<int>> fallback = std::nullopt) const;
  Rational rational_param(const char* key, std::optional<Rational> fallback = std::nullopt) const;
  unsigned seed() const { return static_cast<unsigned>(int_param("seed", 0)); }
  std::uint64_t sample_seed() const { return static_cast<std::uint64_t>(int_param("sample_seed", 0xCA1)); }
  std::size_t cap() const { return static_cast<std::size_t>(int_param("cap", 1'000'000)); }

  std::shared_ptr<const GraphOfGroups> gog() const;
  std::shared_ptr<const SyllableSpace> space() const;
  // "relator" as a word array or {"syllables": [[vertex, element], ...]}.
  GroupWord relator() const;
  GroupWord word(const Json& j, const std::string& path) const;

  struct GGraph {
    GGraphSpec base;
    GGraphSpec spec;  // base with all "attach" entries applied
    std::vector<Attachment> attachments;
    std::function<Element(const Json&, const std::string&)> element;
  };
  // "ggraph": {"kind": "tree" | "lattice" | "coset", ...}; attachments are
  // resolved against a ball of the given radius.
  GGraph ggraph(int radius) const;
  VertexRef vertex_ref(const GGraph& g, const Json& j, const std::string& path) const;
  AttachSpec attach_spec(const GGraph& g, const GGraphSpec& spec, const Json& j, const std::string& path) const;

  // "graph": {"cycle": n} | {"path": n} | {"complete": n} | {"grid": w} |
  // {"wheel": n} | {"n": N, "edges": [[a, b], ...]} | {"ggraph": ..., "radius": R}.
  TwoComplexBall graph_complex() const;

  // Writes text to outputs[key] when requested; returns the path written.
  std::optional<std::string> write_output(const char* key, const std::string& text) const;

 private:
  GGraph ggraph_from(const Json& j, const std::string& path, int radius) const;
  std::shared_ptr<const GraphOfGroups> gog_from(const Json& j, const std::string& path) const;

  Json spec_;
  Json params_;
  std::string command_;
  std::filesystem::path out_dir_;
};

std::string spec_digest(const Json& spec);
Json provenance(const Job& job);

// Runs the command and returns the "result" section of the report.
Json run_command(const Job& job);

}  // namespace relhyp::cli
