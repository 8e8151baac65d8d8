// SPDX-License-Identifier: Apache-2.0
#ifndef HRIS_SERIALIZATION_HPP
#define HRIS_SERIALIZATION_HPP

#include <string>
#include <string_view>

#include "hris/controller.hpp"
#include "hris/geometry.hpp"
#include "hris/retrieval.hpp"
#include "hris/sensing.hpp"
#include "hris/unitcell.hpp"

namespace hris {

// File helpers; both throw IoError.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

// JSON interchange. Writers emit stable key order and shortest round-trip
// numbers so identical inputs give byte-identical files. Readers throw
// MalformedDataLine on unparseable JSON and InvalidSpec on schema problems.
std::string layout_to_json(const PanelLayout& layout);
PanelLayout layout_from_json(std::string_view text);

std::string load_bank_to_json(const LoadBank& bank);
LoadBank load_bank_from_json(std::string_view text);

std::string material_to_json(const MaterialModel& model);
MaterialModel material_from_json(std::string_view text);

std::string scenes_to_json(const std::vector<Scene>& scenes);
std::vector<Scene> scenes_from_json(std::string_view text);

std::string load_matrix_to_json(const LoadMatrix& matrix);
LoadMatrix load_matrix_from_json(std::string_view text);

std::string calibration_to_json(const CalibrationTable& table);
CalibrationTable calibration_from_json(std::string_view text);

std::string doa_to_json(const DoAEstimate& est);
std::string fit_report_to_json(const FitReport& report, const UnitCellSpec& spec);
std::string layout_report_to_json(const LayoutReport& report);
std::string isolation_to_json(const IsolationReport& report);
std::string bands_to_json(const std::vector<FrequencyBand>& bands);

// CSV exports.
std::string effective_params_to_csv(const EffectiveParams& params);
std::string pattern_to_csv(const FarFieldPattern& pattern);
std::string snapshot_to_csv(const Snapshot& snapshot);
std::string episode_log_to_csv(const EpisodeLog& log);

}  // namespace hris

#endif
