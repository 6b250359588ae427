#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "ffnn/backprop.hpp"
#include "ffnn/core.hpp"

namespace ffnn::io {

inline constexpr int kNetworkFormatVersion = 1;

/// JSON document:
///   {"format_version": 1, "input_dim": n,
///    "layers": [{"activation": "identity" | "sigmoid" | {"threshold": t},
///                "has_bias": bool, "weights": [[...], ...]}, ...]}
/// Numbers use the shortest representation that parses back to the same
/// double, so load(save(net)) == net bit for bit.
std::string save_network(const Network& net);

/// Throws ParseError (malformed document), VersionError (unknown
/// format_version) or ValidationError (shape mismatch, non-finite weight).
Network load_network(std::string_view document);

/// CSV with header x1,...,xn,d1,...,dm and one sample per line. Throws
/// ValidationError when the header does not describe n_inputs/n_outputs
/// columns, ParseError on ragged rows or non-numeric fields.
Dataset load_dataset(std::string_view csv, std::size_t n_inputs, std::size_t n_outputs);

/// Inverse of load_dataset.
std::string save_dataset(std::span<const Sample> dataset);

/// "epoch,error" header followed by one row per epoch (1-based).
std::string format_trace_csv(const TrainReport& report);

/// Architecture grammar: sizes separated by '-', the first being the input
/// width and every later one carrying 's' (sigmoid) or 'i' (identity); a
/// trailing 'b' turns on the bias input of every trainable layer.
/// Example: "3-2s-3ib". Throws ParseError.
NetworkShape parse_shape_spec(std::string_view spec);

/// Shortest round-trip decimal form ("0.7", "-2", "1e-05").
std::string format_number(double v);
/// Comma-separated format_number values.
std::string format_vector(std::span<const double> v);
/// Parses "v1,v2,..."; throws ParseError.
Vector parse_vector(std::string_view text);
/// Locale-independent strict double parse; throws ParseError.
double parse_number(std::string_view text);

/// Throws IoError.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace ffnn::io
