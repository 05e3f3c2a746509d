#include "limax/scenario_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <map>
#include <ostream>
#include <sstream>
#include <system_error>
#include <unistd.h>

namespace limax::cli {

ScenarioError::ScenarioError(std::string source, int line, std::string field,
                             const std::string& what)
    : InvalidInput(source + (line > 0 ? ":" + std::to_string(line) : std::string()) +
                   (field.empty() ? std::string() : ": field '" + field + "'") + ": " + what),
      source_(std::move(source)),
      line_(line),
      field_(std::move(field)) {}

namespace {

// Character iterator that counts the newlines it has stepped over.
class LineCountingIterator {
 public:
  using iterator_category = std::input_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char*;
  using reference = const char&;

  LineCountingIterator() = default;
  LineCountingIterator(const char* p, int* line) : p_(p), line_(line) {}

  reference operator*() const { return *p_; }
  LineCountingIterator& operator++() {
    if (*p_ == '\n') ++*line_;
    ++p_;
    return *this;
  }
  LineCountingIterator operator++(int) {
    LineCountingIterator old = *this;
    ++*this;
    return old;
  }
  friend bool operator==(const LineCountingIterator& a, const LineCountingIterator& b) {
    return a.p_ == b.p_;
  }

 private:
  const char* p_ = nullptr;
  int* line_ = nullptr;
};

// Records the line on which each JSON pointer starts.
class LineMapper : public nlohmann::json_sax<Json> {
 public:
  explicit LineMapper(const int* line) : line_(line) {}

  std::map<std::string, int> lines;

  bool null() override { return value(); }
  bool boolean(bool) override { return value(); }
  bool number_integer(number_integer_t) override { return value(); }
  bool number_unsigned(number_unsigned_t) override { return value(); }
  bool number_float(number_float_t, const string_t&) override { return value(); }
  bool string(string_t&) override { return value(); }
  bool binary(binary_t&) override { return value(); }

  bool start_object(std::size_t) override {
    open();
    frames_.push_back({false, 0, {}});
    return true;
  }
  bool key(string_t& k) override {
    frames_.back().key = k;
    lines.emplace(path(), *line_);
    return true;
  }
  bool end_object() override { return close(); }
  bool start_array(std::size_t) override {
    open();
    frames_.push_back({true, 0, {}});
    return true;
  }
  bool end_array() override { return close(); }
  bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception&) override {
    return false;
  }

 private:
  struct Frame {
    bool array;
    std::size_t index;
    std::string key;
  };

  std::string path() const {
    std::string p;
    for (const Frame& f : frames_) p += "/" + (f.array ? std::to_string(f.index) : f.key);
    return p;
  }
  void open() {
    if (!frames_.empty() && frames_.back().array) lines.emplace(path(), *line_);
  }
  bool value() {
    open();
    if (!frames_.empty() && frames_.back().array) ++frames_.back().index;
    return true;
  }
  bool close() {
    frames_.pop_back();
    if (!frames_.empty() && frames_.back().array) ++frames_.back().index;
    return true;
  }

  const int* line_;
  std::vector<Frame> frames_;
};

class Reader {
 public:
  Reader(std::string_view text, std::string source) : source_(std::move(source)) {
    try {
      root_ = Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw ScenarioError(source_, line_of_offset(text, e.byte), "",
                          "malformed JSON: " + std::string(e.what()));
    }
    int line = 1;
    LineMapper mapper(&line);
    Json::sax_parse(LineCountingIterator(text.data(), &line),
                    LineCountingIterator(text.data() + text.size(), &line), &mapper);
    lines_ = std::move(mapper.lines);
  }

  const Json& root() const { return root_; }

  [[noreturn]] void fail(const std::string& field, const std::string& what) const {
    throw ScenarioError(source_, line_of(field), field, what);
  }

  const Json& require(const Json& obj, const std::string& base, const char* key) const {
    const auto it = obj.find(key);
    if (it == obj.end()) fail(base.empty() ? "/" : base, std::string("missing field '") + key + "'");
    return *it;
  }

  double number(const Json& v, const std::string& field) const {
    if (!v.is_number()) fail(field, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(field, "expected a finite number");
    return d;
  }

  Vec2 vec(const Json& v, const std::string& field) const {
    if (!v.is_array() || v.size() != 2) fail(field, "expected an array of 2 numbers");
    return {number(v[0], field + "/0"), number(v[1], field + "/1")};
  }

  int body(const Json& v, const std::string& field) const {
    if (!v.is_number_integer() || v.get<long long>() < 1 || v.get<long long>() > kBodies) {
      fail(field, "expected a body label 1..4");
    }
    return static_cast<int>(v.get<long long>());
  }

 private:
  static int line_of_offset(std::string_view text, std::size_t byte) {
    const std::size_t end = std::min(byte, text.size());
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + end, '\n'));
  }

  int line_of(const std::string& field) const {
    // Walk up to the closest recorded ancestor.
    std::string p = field;
    while (!p.empty()) {
      const auto it = lines_.find(p);
      if (it != lines_.end()) return it->second;
      p.erase(p.rfind('/'));
    }
    return 1;
  }

  std::string source_;
  Json root_;
  std::map<std::string, int> lines_;
};

const char* const kKnownKeys[] = {"m", "omega", "bodies", "dt", "t_final", "events", "seed",
                                  "outputs"};

}  // namespace

Scenario parse_scenario(std::string_view text, const std::string& source) {
  const Reader in(text, source);
  const Json& root = in.root();
  if (!root.is_object()) in.fail("/", "expected a JSON object");
  for (const auto& [key, value] : root.items()) {
    if (std::find(std::begin(kKnownKeys), std::end(kKnownKeys), key) == std::end(kKnownKeys)) {
      in.fail("/" + key, "unknown field");
    }
  }

  Scenario sc;
  const double m = in.number(in.require(root, "", "m"), "/m");
  const double omega = in.number(in.require(root, "", "omega"), "/omega");
  if (m <= 0.0) in.fail("/m", "mass must be positive");
  if (omega <= 0.0) in.fail("/omega", "frequency must be positive");
  sc.params = SystemParams(m, omega);

  const Json& bodies = in.require(root, "", "bodies");
  if (!bodies.is_array() || bodies.size() != kBodies) {
    in.fail("/bodies", "expected an array of exactly 4 bodies");
  }
  for (int k = 0; k < kBodies; ++k) {
    const std::string base = "/bodies/" + std::to_string(k);
    const Json& b = bodies[k];
    if (!b.is_object()) in.fail(base, "expected an object with 'r' and 'p'");
    for (const auto& [key, value] : b.items()) {
      if (key != "r" && key != "p") in.fail(base + "/" + key, "unknown field");
    }
    sc.state.r[k] = in.vec(in.require(b, base, "r"), base + "/r");
    sc.state.p[k] = in.vec(in.require(b, base, "p"), base + "/p");
  }

  sc.dt = in.number(in.require(root, "", "dt"), "/dt");
  if (sc.dt <= 0.0) in.fail("/dt", "time step must be positive");
  sc.t_final = in.number(in.require(root, "", "t_final"), "/t_final");
  if (sc.t_final < 0.0) in.fail("/t_final", "final time must be non-negative");

  if (const auto it = root.find("events"); it != root.end()) {
    if (!it->is_array()) in.fail("/events", "expected an array");
    for (std::size_t k = 0; k < it->size(); ++k) {
      const std::string base = "/events/" + std::to_string(k);
      const Json& e = (*it)[k];
      if (!e.is_object()) in.fail(base, "expected an object");
      for (const auto& [key, value] : e.items()) {
        if (key != "t" && key != "plus" && key != "minus" && key != "delta") {
          in.fail(base + "/" + key, "unknown field");
        }
      }
      BoostEvent ev;
      ev.t_ex = in.number(in.require(e, base, "t"), base + "/t");
      if (ev.t_ex < 0.0) in.fail(base + "/t", "event time must be non-negative");
      ev.body_plus = in.body(in.require(e, base, "plus"), base + "/plus");
      ev.body_minus = in.body(in.require(e, base, "minus"), base + "/minus");
      if (ev.body_plus == ev.body_minus) in.fail(base + "/minus", "must differ from 'plus'");
      ev.delta = in.vec(in.require(e, base, "delta"), base + "/delta");
      if (!sc.events.empty() && ev.t_ex < sc.events.back().t_ex) {
        in.fail(base + "/t", "events must be sorted by time");
      }
      sc.events.push_back(ev);
    }
  }

  if (const auto it = root.find("seed"); it != root.end()) {
    if (!it->is_number_unsigned()) in.fail("/seed", "expected a non-negative integer");
    sc.seed = it->get<std::uint64_t>();
  }

  if (const auto it = root.find("outputs"); it != root.end()) {
    if (!it->is_array()) in.fail("/outputs", "expected an array of integral names");
    for (std::size_t k = 0; k < it->size(); ++k) {
      const std::string field = "/outputs/" + std::to_string(k);
      if (!(*it)[k].is_string()) in.fail(field, "expected an integral name");
      try {
        sc.outputs.push_back(IntegralName::parse((*it)[k].get<std::string>()));
      } catch (const InvalidInput& e) {
        in.fail(field, e.what());
      }
    }
  }
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError(path.string(), 0, "", "cannot open file");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scenario(text.str(), path.string());
}

// -0.0 is written as 0.
Json vec_to_json(Vec2 v) { return Json::array({v.x + 0.0, v.y + 0.0}); }

Json state_to_json(const PhaseState& s) {
  Json bodies = Json::array();
  for (int k = 0; k < kBodies; ++k) {
    bodies.push_back(Json{{"r", vec_to_json(s.r[k])}, {"p", vec_to_json(s.p[k])}});
  }
  return bodies;
}

Json scenario_to_json(const Scenario& sc) {
  Json j;
  j["m"] = sc.params.m();
  j["omega"] = sc.params.omega();
  j["bodies"] = state_to_json(sc.state);
  j["dt"] = sc.dt;
  j["t_final"] = sc.t_final;
  Json events = Json::array();
  for (const BoostEvent& e : sc.events) {
    events.push_back(Json{{"t", e.t_ex},
                          {"plus", e.body_plus},
                          {"minus", e.body_minus},
                          {"delta", vec_to_json(e.delta)}});
  }
  j["events"] = std::move(events);
  j["seed"] = sc.seed;
  if (!sc.outputs.empty()) {
    Json outputs = Json::array();
    for (const IntegralName& n : sc.outputs) outputs.push_back(n.label());
    j["outputs"] = std::move(outputs);
  }
  return j;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v + 0.0);
  return std::string(buf, res.ptr);
}

std::string csv_header() {
  std::string h = "t";
  for (int k = 1; k <= kBodies; ++k) {
    const std::string n = std::to_string(k);
    h += ",x" + n + ",y" + n + ",px" + n + ",py" + n;
  }
  return h + "\n";
}

std::string csv_row(double t, const PhaseState& s) {
  std::string row = format_double(t);
  for (int k = 0; k < kBodies; ++k) {
    for (double v : {s.r[k].x, s.r[k].y, s.p[k].x, s.p[k].y}) row += "," + format_double(v);
  }
  return row + "\n";
}

std::string trajectory_csv(const Trajectory& traj) {
  std::string out = csv_header();
  for (const TimedState& ts : traj.samples) out += csv_row(ts.t, ts.state);
  return out;
}

Trajectory parse_trajectory_csv(std::string_view text, const std::string& source) {
  Trajectory traj;
  int line = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view row = text.substr(pos, end - pos);
    pos = end + 1;
    ++line;
    if (line == 1) {
      if (std::string(row) + "\n" != csv_header()) {
        throw ScenarioError(source, line, "header", "unexpected CSV header");
      }
      continue;
    }
    if (row.empty()) continue;
    double values[1 + 4 * kBodies];
    std::size_t start = 0;
    for (int c = 0; c < 1 + 4 * kBodies; ++c) {
      const std::size_t comma = c == 4 * kBodies ? row.size() : row.find(',', start);
      if (comma == std::string_view::npos) {
        throw ScenarioError(source, line, "column " + std::to_string(c + 1), "missing value");
      }
      const auto res = std::from_chars(row.data() + start, row.data() + comma, values[c]);
      if (res.ec != std::errc() || res.ptr != row.data() + comma) {
        throw ScenarioError(source, line, "column " + std::to_string(c + 1), "not a number");
      }
      start = comma + 1;
    }
    TimedState ts;
    ts.t = values[0];
    for (int k = 0; k < kBodies; ++k) {
      ts.state.r[k] = {values[1 + 4 * k], values[2 + 4 * k]};
      ts.state.p[k] = {values[3 + 4 * k], values[4 + 4 * k]};
    }
    traj.samples.push_back(ts);
  }
  if (line == 0) throw ScenarioError(source, 0, "header", "empty CSV");
  return traj;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw Error("cannot write " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error("cannot rename onto " + path.string());
  }
}

void emit(const std::optional<std::filesystem::path>& path, std::string_view content,
          std::ostream& out) {
  if (path) {
    write_file_atomic(*path, content);
  } else {
    out << content;
  }
}

}  // namespace limax::cli
