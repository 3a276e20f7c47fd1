#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "isodet/heat_trace.hpp"
#include "isodet/phase_table.hpp"

namespace isodet {

struct JumpSpectrum;

// 64-bit FNV-1a of the text, as 16 hex digits.
std::string content_hash(const std::string& text);

// $ISODET_CACHE, else $XDG_CACHE_HOME/isodet, else ~/.cache/isodet.
// Empty string disables caching (ISODET_CACHE set to "" or "off").
std::string cache_dir();
std::optional<std::string> cache_read(const std::string& key);
// Writes to a temporary file in the cache directory and renames it into
// place; failures are silent (the cache is an optimisation).
void cache_write(const std::string& key, const std::string& content);

// 17 significant digits; "-0" is written as "0".
std::string fmt17(double v);

std::string phase_csv(const PhaseTable& t);
std::string heat_csv(const HeatSamples& h);
std::string spectrum_csv(const JumpSpectrum& s);

// PhaseTable samples only (models are recomputed from them).
std::string phase_table_text(const PhaseTable& t);
PhaseTable phase_table_from_text(const std::string& text);

void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace isodet
