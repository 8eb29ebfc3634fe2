#pragma once

#include <map>
#include <string>
#include <vector>

#include "graphmm/engine.hpp"
#include "graphmm/model.hpp"
#include "graphmm/sim.hpp"
#include "graphmm/types.hpp"

namespace graphmm {

// Data CSV: header "v,<sample ids...>", one row per vertex, vertices in
// 0..N-1 order. Malformed content raises DataError with row/column
// diagnostics.
Matrix read_data_csv(const std::string& path);
void write_data_csv(const Matrix& m, const std::string& path);

// lfdr table: header "vertex,row,col,lfdr", lfdr at 8 significant digits.
// cols <= 0 writes row = col = -1 (non-lattice graphs).
void write_lfdr_csv(const LfdrResult& result, int cols, const std::string& path);
Vector read_score_csv(const std::string& path);  // 4th column of the same schema

// Ground-truth table: header "vertex,block,delta,null".
struct TruthTable {
  std::vector<int> block;
  std::vector<std::uint8_t> delta_of_vertex;
  std::vector<std::uint8_t> truth_null;
};
void write_truth_csv(const SyntheticDataset& dataset, const std::string& path);
TruthTable read_truth_csv(const std::string& path);

// Plain key=value text; '#' comments and blank lines ignored.
std::map<std::string, std::string> read_key_value(const std::string& path);

ScenarioConfig scenario_from_key_value(const std::map<std::string, std::string>& kv);

// Audit/reuse serialization of estimated hyperparameters: scalar lines
// followed by "A=" / "B=" CSV blocks.
void write_hyperparams(const Hyperparams& hp, const std::string& path);
Hyperparams read_hyperparams(const std::string& path);

}  // namespace graphmm
