#pragma once

#include <cstddef>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "netforge/network.hpp"

namespace netforge {

/// Malformed input document. `line` and `column` are 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t line = 0, std::size_t column = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg
                                : msg),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_, column_;
};

namespace detail {

inline std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace detail

/// Parses JSON text, turning syntax errors into ParseError with a line number.
inline nlohmann::json parse_json(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // byte is one past the offending character
    auto [line, col] = detail::line_col(text, e.byte > 0 ? e.byte - 1 : 0);
    std::string what = e.what();
    auto pos = what.find("parse error");
    throw ParseError(pos == std::string::npos ? what : what.substr(pos), line, col);
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline nlohmann::json network_to_json(const NeuralNet& net, const std::string& activation = "relu") {
  nlohmann::json layers = nlohmann::json::array();
  for (const auto& ly : net.layers()) {
    layers.push_back({{"rows", ly.weights.rows()},
                      {"cols", ly.weights.cols()},
                      {"weights", std::vector<double>(ly.weights.data().begin(), ly.weights.data().end())},
                      {"bias", ly.bias}});
  }
  return {{"activation", activation}, {"layers", std::move(layers)}};
}

/// nlohmann writes doubles in shortest round-trip form, so the text reproduces
/// every finite weight exactly.
inline std::string to_json(const NeuralNet& net, const std::string& activation = "relu") {
  return network_to_json(net, activation).dump();
}

inline NeuralNet network_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object()) throw ParseError("network document must be an object");
    if (j.contains("activation")) {
      const auto act = j.at("activation").get<std::string>();
      if (act != "relu" && act != "identity") throw ParseError("unsupported activation \"" + act + "\"");
    }
    std::vector<Layer> layers;
    std::size_t k = 0;
    for (const auto& jl : j.at("layers")) {
      ++k;
      const auto rows = jl.at("rows").get<std::size_t>();
      const auto cols = jl.at("cols").get<std::size_t>();
      auto w = jl.at("weights").get<std::vector<double>>();
      auto b = jl.at("bias").get<std::vector<double>>();
      if (w.size() != rows * cols)
        throw ParseError("layer " + std::to_string(k) + ": " + std::to_string(w.size()) + " weights for " +
                         std::to_string(rows) + "x" + std::to_string(cols));
      layers.push_back(Layer{Matrix(rows, cols, std::move(w)), std::move(b)});
    }
    return NeuralNet(std::move(layers));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("network document: ") + e.what());
  } catch (const ShapeError& e) {
    throw ParseError(std::string("network document: ") + e.what());
  }
}

inline NeuralNet from_json(const std::string& text) { return network_from_json(parse_json(text)); }

/// Activation named in a network document ("relu" when absent).
inline Activation activation_from_json(const nlohmann::json& j) {
  const std::string name = j.value("activation", std::string("relu"));
  if (name == "identity") return Activation::identity();
  return Activation::relu();
}

}  // namespace netforge
