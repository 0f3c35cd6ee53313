#pragma once

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "stackamb/errors.hpp"
#include "stackamb/game.hpp"
#include "stackamb/rational.hpp"

namespace stackamb {

namespace detail {

inline std::pair<std::size_t, std::size_t> line_col_of(const std::string& text,
                                                       std::size_t byte_pos) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte_pos && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

// Numeric entries are JSON integers or strings ("a/b" or a finite decimal).
// JSON floats are rejected: they have already been binary-rounded by the
// producer, so accepting them would silently break exactness.
inline Rat rat_from_json(const nlohmann::json& j, const std::string& where) {
  if (j.is_number_integer()) return Rat(j.get<std::int64_t>());
  if (j.is_number_unsigned()) return Rat(j.get<std::uint64_t>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_float())
    throw ValidationError(ValidationKind::NonRationalEntry,
                          where + ": floating-point literal; write decimals as strings");
  throw ValidationError(ValidationKind::NonRationalEntry,
                        where + ": expected integer or rational string");
}

inline nlohmann::json rat_to_json(const Rat& r) {
  if (rat_den(r) == 1 && rat_num(r) >= std::numeric_limits<std::int64_t>::min() &&
      rat_num(r) <= std::numeric_limits<std::int64_t>::max())
    return rat_num(r).convert_to<std::int64_t>();
  return to_fraction_string(r);
}

inline Matrix matrix_from_json(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array() || j.empty())
    throw ValidationError(ValidationKind::DimensionMismatch,
                          where + ": expected a non-empty array of rows");
  std::vector<std::vector<Rat>> rows;
  for (std::size_t r = 0; r < j.size(); ++r) {
    const auto& row = j[r];
    if (!row.is_array() || row.empty())
      throw ValidationError(ValidationKind::DimensionMismatch,
                            where + ": row " + std::to_string(r) + " is not a non-empty array");
    std::vector<Rat> out;
    out.reserve(row.size());
    for (std::size_t c = 0; c < row.size(); ++c)
      out.push_back(rat_from_json(row[c], where + "[" + std::to_string(r) + "][" +
                                              std::to_string(c) + "]"));
    if (!rows.empty() && out.size() != rows.front().size())
      throw ValidationError(ValidationKind::DimensionMismatch,
                            where + ": ragged rows");
    rows.push_back(std::move(out));
  }
  return Matrix::from_rows(std::move(rows));
}

}  // namespace detail

// Parses the game file format; the result is always validated.
inline CoupledGame parse_game(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, col] = detail::line_col_of(text, e.byte > 0 ? e.byte - 1 : 0);
    throw SyntaxError(std::string("JSON syntax: ") + e.what(), line, col);
  }
  if (!doc.is_object() || !doc.contains("leader_actions") || !doc.contains("followers"))
    throw ValidationError(ValidationKind::DimensionMismatch,
                          "game file needs 'leader_actions' and 'followers'");
  CoupledGame game;
  if (!doc["leader_actions"].is_number_integer() || doc["leader_actions"].get<std::int64_t>() < 1)
    throw ValidationError(ValidationKind::DimensionMismatch,
                          "'leader_actions' must be a positive integer");
  game.leader_action_count = doc["leader_actions"].get<std::size_t>();
  if (!doc["followers"].is_array())
    throw ValidationError(ValidationKind::EmptyFollowerList, "'followers' must be an array");
  for (std::size_t i = 0; i < doc["followers"].size(); ++i) {
    const auto& fj = doc["followers"][i];
    FollowerGame f;
    f.name = fj.contains("name") && fj["name"].is_string() ? fj["name"].get<std::string>()
                                                           : "F" + std::to_string(i + 1);
    if (!fj.contains("follower_payoff") || !fj.contains("leader_payoff"))
      throw ValidationError(ValidationKind::DimensionMismatch,
                            "follower '" + f.name + "' needs follower_payoff and leader_payoff");
    f.follower_payoff = detail::matrix_from_json(fj["follower_payoff"],
                                                 f.name + ".follower_payoff");
    f.leader_payoff = detail::matrix_from_json(fj["leader_payoff"], f.name + ".leader_payoff");
    game.followers.push_back(std::move(f));
  }
  validate(game);
  return game;
}

inline std::string serialize_game(const CoupledGame& game) {
  nlohmann::json doc;
  doc["leader_actions"] = game.leader_action_count;
  doc["followers"] = nlohmann::json::array();
  for (const auto& f : game.followers) {
    nlohmann::json fj;
    fj["name"] = f.name;
    auto dump_matrix = [](const Matrix& m) {
      nlohmann::json rows = nlohmann::json::array();
      for (std::size_t r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(detail::rat_to_json(m.at(r, c)));
        rows.push_back(std::move(row));
      }
      return rows;
    };
    fj["follower_payoff"] = dump_matrix(f.follower_payoff);
    fj["leader_payoff"] = dump_matrix(f.leader_payoff);
    doc["followers"].push_back(std::move(fj));
  }
  return doc.dump(2) + "\n";
}

inline CoupledGame load_game_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open game file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_game(buf.str());
}

inline void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write file '" + path + "'");
  out << contents;
}

}  // namespace stackamb
