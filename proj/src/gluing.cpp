#include "idealscan/gluing.hpp"

#include <json.hpp>

#include <sstream>

namespace idealscan {

namespace {

using nlohmann::ordered_json;

std::vector<long long> int_vector(const nlohmann::json& arr, const std::string& what) {
  if (!arr.is_array()) throw ParseError(what + ": expected an array");
  std::vector<long long> out;
  out.reserve(arr.size());
  for (const auto& x : arr) {
    if (!x.is_number_integer()) throw ParseError(what + ": non-integer exponent");
    out.push_back(x.get<long long>());
  }
  return out;
}

GluingSystem parse_json(const std::string& input) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(input);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("top-level JSON value must be an object");
  for (const char* key : {"name", "n", "rows", "m", "l"})
    if (!j.contains(key)) throw ParseError(std::string("missing key \"") + key + "\"");

  GluingSystem sys;
  if (!j["name"].is_string()) throw ParseError("\"name\" must be a string");
  sys.name = j["name"].get<std::string>();
  if (!j["n"].is_number_integer()) throw ParseError("\"n\" must be an integer");
  sys.n = j["n"].get<int>();
  if (sys.n < 1) throw ParseError("\"n\" must be positive");

  const std::size_t n = static_cast<std::size_t>(sys.n);
  if (!j["rows"].is_array()) throw ParseError("\"rows\" must be an array");
  if (j["rows"].size() != n && j["rows"].size() + 1 != n)
    throw ParseError("wrong number of rows: expected n or n-1");
  for (std::size_t i = 0; i < j["rows"].size(); ++i) {
    auto row = int_vector(j["rows"][i], "row " + std::to_string(i + 1));
    if (row.size() != 2 * n)
      throw ParseError("row " + std::to_string(i + 1) + ": wrong vector length");
    sys.rows.push_back(std::move(row));
  }
  sys.m = int_vector(j["m"], "m");
  sys.l = int_vector(j["l"], "l");
  if (sys.m.size() != 2 * n) throw ParseError("m: wrong vector length");
  if (sys.l.size() != 2 * n) throw ParseError("l: wrong vector length");

  if (j.contains("signs")) {
    auto raw = int_vector(j["signs"], "signs");
    if (raw.size() != sys.rows.size())
      throw ParseError("signs: expected one sign per row");
    std::vector<int> signs;
    for (long long s : raw) {
      if (s != 1 && s != -1) throw ParseError("sign not +1/-1");
      signs.push_back(static_cast<int>(s));
    }
    sys.signs = std::move(signs);
  }
  return sys;
}

// Line-oriented text format: one whitespace-separated line of 2n integers
// per equation, optionally followed by the equation sign +1/-1; peripheral
// vectors on lines prefixed "m:" and "l:"; "#" starts a comment.
GluingSystem parse_snap(const std::string& input) {
  std::vector<std::vector<long long>> equation_lines;
  std::optional<std::vector<long long>> m, l;

  std::istringstream stream(input);
  std::string line;
  int lineno = 0;
  while (std::getline(stream, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::string prefix;
    if (auto colon = line.find(':'); colon != std::string::npos) {
      prefix = line.substr(0, colon);
      prefix.erase(0, prefix.find_first_not_of(" \t"));
      if (auto end = prefix.find_last_not_of(" \t"); end != std::string::npos)
        prefix.erase(end + 1);
      line.erase(0, colon + 1);
    }
    std::istringstream tokens(line);
    std::vector<long long> values;
    std::string tok;
    while (tokens >> tok) {
      try {
        std::size_t used = 0;
        values.push_back(std::stoll(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(lineno) + ": non-integer exponent \"" +
                         tok + "\"");
      }
    }
    if (prefix.empty()) {
      if (!values.empty()) equation_lines.push_back(std::move(values));
    } else if (prefix == "m") {
      m = std::move(values);
    } else if (prefix == "l") {
      l = std::move(values);
    } else {
      throw ParseError("line " + std::to_string(lineno) + ": unknown prefix \"" + prefix +
                       ":\"");
    }
  }

  if (!m) throw ParseError("missing \"m:\" line");
  if (!l) throw ParseError("missing \"l:\" line");
  if (m->empty() || m->size() % 2 != 0) throw ParseError("m: wrong vector length");
  const std::size_t n = m->size() / 2;
  if (l->size() != 2 * n) throw ParseError("l: wrong vector length");
  if (equation_lines.size() != n && equation_lines.size() + 1 != n)
    throw ParseError("wrong number of equation lines: expected n or n-1");

  GluingSystem sys;
  sys.n = static_cast<int>(n);
  sys.m = std::move(*m);
  sys.l = std::move(*l);

  // Either every equation line carries a trailing sign or none does.
  std::size_t with_sign = 0;
  for (const auto& vals : equation_lines) {
    if (vals.size() == 2 * n + 1)
      ++with_sign;
    else if (vals.size() != 2 * n)
      throw ParseError("equation line: wrong vector length");
  }
  if (with_sign != 0 && with_sign != equation_lines.size())
    throw ParseError("inconsistent sign columns across equation lines");

  std::vector<int> signs;
  for (auto& vals : equation_lines) {
    if (with_sign) {
      long long s = vals.back();
      if (s != 1 && s != -1) throw ParseError("sign not +1/-1");
      signs.push_back(static_cast<int>(s));
      vals.pop_back();
    }
    sys.rows.push_back(std::move(vals));
  }
  if (with_sign) sys.signs = std::move(signs);
  return sys;
}

}  // namespace

GluingSystem parse_gluing_system(const std::string& input, InputFormat format) {
  if (input.find_first_not_of(" \t\r\n") == std::string::npos)
    throw ParseError("empty input");
  return format == InputFormat::Json ? parse_json(input) : parse_snap(input);
}

std::string emit_gluing_system(const GluingSystem& sys) {
  ordered_json j;
  j["name"] = sys.name;
  j["n"] = sys.n;
  j["rows"] = sys.rows;
  if (sys.signs) j["signs"] = *sys.signs;
  j["m"] = sys.m;
  j["l"] = sys.l;
  return j.dump(2) + "\n";
}

ValidationReport validate(const GluingSystem& sys) {
  ValidationReport rep;
  if (sys.n < 1) {
    rep.errors.push_back("n must be positive");
    return rep;
  }
  const std::size_t n = static_cast<std::size_t>(sys.n);

  if (sys.rows.size() != n && sys.rows.size() + 1 != n)
    rep.errors.push_back("expected n or n-1 rows, got " + std::to_string(sys.rows.size()));
  for (std::size_t i = 0; i < sys.rows.size(); ++i)
    if (sys.rows[i].size() != 2 * n)
      rep.errors.push_back("row " + std::to_string(i + 1) + ": wrong vector length");
  if (sys.m.size() != 2 * n) rep.errors.push_back("m: wrong vector length");
  if (sys.l.size() != 2 * n) rep.errors.push_back("l: wrong vector length");
  if (sys.signs) {
    if (sys.signs->size() != sys.rows.size())
      rep.errors.push_back("signs: expected one sign per row");
    for (int s : *sys.signs)
      if (s != 1 && s != -1) rep.errors.push_back("sign not +1/-1");
  }
  if (!rep.ok()) return rep;

  bool check_row_sum = sys.has_all_rows();
  if (!sys.has_all_rows()) {
    rep.warnings.push_back("only n-1 rows supplied; row-sum check skipped");
  } else {
    bool last_zero = true;
    for (long long x : sys.rows.back()) last_zero = last_zero && x == 0;
    if (last_zero) {
      rep.warnings.push_back("row n is zero; row-sum check skipped");
      check_row_sum = false;
    }
  }
  if (check_row_sum) {
    for (std::size_t j = 0; j < 2 * n; ++j) {
      long long sum = 0;
      for (const auto& row : sys.rows) sum += row[j];
      if (sum != 0) {
        rep.errors.push_back("row sum nonzero in component " + std::to_string(j + 1));
        break;
      }
    }
  }

  // Self-pairing of each active row under the symplectic form is zero by
  // antisymmetry; surfaced as a sanity note, a warning if it ever failed.
  bool self_ok = true;
  std::size_t active = std::min(sys.rows.size(), n - 1);
  for (std::size_t i = 0; i < active && self_ok; ++i) {
    long long acc = 0;
    for (std::size_t k = 0; k < n; ++k)
      acc += sys.rows[i][2 * k] * sys.rows[i][2 * k + 1] -
             sys.rows[i][2 * k + 1] * sys.rows[i][2 * k];
    self_ok = acc == 0;
  }
  if (self_ok)
    rep.notes.push_back("self-pairing r_i ^ r_i = 0 holds for all active rows");
  else
    rep.warnings.push_back("self-pairing r_i ^ r_i nonzero for some active row");
  return rep;
}

ReducedSystem reduce(const GluingSystem& sys) {
  ReducedSystem red;
  red.base = sys;
  std::size_t active = std::min(sys.rows.size(), static_cast<std::size_t>(sys.n) - 1);
  red.active_rows.assign(sys.rows.begin(), sys.rows.begin() + active);
  return red;
}

}  // namespace idealscan
