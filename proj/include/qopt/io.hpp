#pragma once

#include <json.hpp>
#include <ostream>
#include <string>

#include "qopt/homodyne.hpp"
#include "qopt/phase_space.hpp"
#include "qopt/protocols.hpp"
#include "qopt/state.hpp"
#include "qopt/tomography.hpp"

namespace qopt {

using nlohmann::json;

inline constexpr const char* kFormatVersion = "1";

json state_to_json(const StateArray& state);
StateArray state_from_json(const json& j);

void write_wigner_csv(const WignerGrid& grid, std::ostream& os);
json wigner_meta_json(const GridSpec& spec, const NegativityMetrics& m);

void write_dataset_csv(const QuadratureDataset& data, std::ostream& os);
QuadratureDataset read_dataset_csv(std::istream& is);
json dataset_meta_json(const QuadratureDataset& data);

json process_tensor_to_json(const ProcessTensor& t);
ProcessTensor process_tensor_from_json(const json& j);

json protocol_report_to_json(const ProtocolReport& rep, bool embed_state = true);

}  // namespace qopt
