#pragma once

#include <string>
#include <vector>

#include "ocpd/vec.hpp"

namespace ocpd {

// Round-trip double formatting for CSV cells.
std::string format_double(double v);

// Stream CSV: header "t,x_0,...,x_{d-1}", one sample per row. Comment lines
// start with '#'.
void write_stream_csv(const std::string& path, const std::vector<Vec>& stream,
                      const std::string& config_comment = {});
std::vector<Vec> read_stream_csv(const std::string& path);

}  // namespace ocpd
