#include "embedrank/design_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "embedrank/error.hpp"

namespace embedrank {
namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

std::vector<std::uint64_t> parse_numbers(std::string_view line) {
  std::vector<std::uint64_t> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == ' ') {
      ++i;
      continue;
    }
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + line.size(), value);
    if (ec != std::errc{} || ptr == line.data() + i) {
      throw Error(ErrorCode::ParseError, "bad number in design line: " + std::string(line));
    }
    out.push_back(value);
    i = static_cast<std::size_t>(ptr - line.data());
  }
  return out;
}

}  // namespace

std::string to_des(const IncidenceStructure& d) {
  std::string out = std::to_string(d.v()) + " " + std::to_string(d.b()) + "\n";
  for (const auto& blk : d.blocks()) {
    for (std::size_t i = 0; i < blk.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(blk[i]);
    }
    out += '\n';
  }
  return out;
}

IncidenceStructure from_des(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw Error(ErrorCode::ParseError, "empty design file");
  const auto header = parse_numbers(lines[0]);
  if (header.size() != 2) throw Error(ErrorCode::ParseError, "header must be 'v b'");
  const auto b = header[1];
  if (lines.size() < b + 1) throw Error(ErrorCode::ParseError, "fewer block lines than declared");
  std::vector<Block> blocks;
  blocks.reserve(b);
  for (std::size_t j = 0; j < b; ++j) {
    const auto nums = parse_numbers(lines[j + 1]);
    blocks.emplace_back(nums.begin(), nums.end());
  }
  for (std::size_t j = b + 1; j < lines.size(); ++j) {
    if (!lines[j].empty()) throw Error(ErrorCode::ParseError, "trailing content after blocks");
  }
  return IncidenceStructure(header[0], std::move(blocks));
}

std::string to_json(const IncidenceStructure& d) {
  nlohmann::ordered_json j;
  j["v"] = d.v();
  j["blocks"] = d.blocks();
  j["name"] = d.name();
  return j.dump() + "\n";
}

IncidenceStructure from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    auto blocks = j.at("blocks").get<std::vector<Block>>();
    return IncidenceStructure(j.at("v").get<std::size_t>(), std::move(blocks), j.value("name", std::string{}));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

IncidenceStructure read_design(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  auto d = path.extension() == ".json" ? from_json(ss.str()) : from_des(ss.str());
  if (d.name().empty()) d.set_name(path.stem().string());
  return d;
}

void write_design(const std::filesystem::path& path, const IncidenceStructure& d) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << (path.extension() == ".json" ? to_json(d) : to_des(d));
}

}  // namespace embedrank
