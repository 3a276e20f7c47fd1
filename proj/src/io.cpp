#include "isodet/io.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unistd.h>

#include "isodet/jump_operator.hpp"

namespace fs = std::filesystem;

namespace isodet {

std::string content_hash(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string cache_dir() {
  if (const char* e = std::getenv("ISODET_CACHE")) {
    const std::string v = e;
    return v == "off" ? std::string() : v;
  }
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return std::string(x) + "/isodet";
  if (const char* h = std::getenv("HOME"); h && *h) return std::string(h) + "/.cache/isodet";
  return {};
}

namespace {

std::string cache_path(const std::string& key) {
  const std::string dir = cache_dir();
  if (dir.empty()) return {};
  return dir + "/" + content_hash(key) + ".txt";
}

}  // namespace

std::optional<std::string> cache_read(const std::string& key) {
  const std::string p = cache_path(key);
  if (p.empty()) return std::nullopt;
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  std::string first;
  if (!std::getline(in, first) || first != key) return std::nullopt;  // hash collision or foreign file
  std::ostringstream rest;
  rest << in.rdbuf();
  return rest.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const fs::path target(path);
  fs::path tmp = target;
  static std::atomic<unsigned> counter{0};
  tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw std::runtime_error("cannot write " + tmp.string());
  }
  fs::rename(tmp, target);
}

void cache_write(const std::string& key, const std::string& content) {
  const std::string p = cache_path(key);
  if (p.empty()) return;
  try {
    fs::create_directories(fs::path(p).parent_path());
    write_file_atomic(p, key + "\n" + content);
  } catch (const std::exception&) {
  }
}

std::string fmt17(double v) {
  if (v == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string phase_csv(const PhaseTable& t) {
  std::string out = "lambda,s,err,N\n";
  for (std::size_t i = 0; i < t.lambda.size(); ++i)
    out += fmt17(t.lambda[i]) + ',' + fmt17(t.s[i]) + ',' + fmt17(t.err[i]) + ',' + std::to_string(t.N[i]) + '\n';
  return out;
}

std::string heat_csv(const HeatSamples& h) {
  std::string out = "t,value,err,kind\n";
  for (std::size_t i = 0; i < h.t.size(); ++i)
    out += fmt17(h.t[i]) + ',' + fmt17(h.value[i]) + ',' + fmt17(h.err[i]) + ',' + to_string(h.kind) + '\n';
  return out;
}

std::string spectrum_csv(const JumpSpectrum& s) {
  std::string out = "n,multiplicity,lambda\n";
  for (std::size_t n = 0; n < s.lambda.size(); ++n)
    out += std::to_string(n) + ',' + std::to_string(s.mult[n]) + ',' + fmt17(s.lambda[n]) + '\n';
  return out;
}

std::string phase_table_text(const PhaseTable& t) { return phase_csv(t); }

PhaseTable phase_table_from_text(const std::string& text) {
  PhaseTable t;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "lambda,s,err,N") throw std::invalid_argument("not a phase table");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double l, s, e;
    int n;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%d", &l, &s, &e, &n) != 4)
      throw std::invalid_argument("malformed phase table row: " + line);
    t.lambda.push_back(l);
    t.s.push_back(s);
    t.err.push_back(e);
    t.N.push_back(n);
  }
  return t;
}

}  // namespace isodet
