#pragma once
#include <functional>
#include <string>

#include <json.hpp>

#include "kfold/tensor.hpp"

namespace kfold {

using Json = nlohmann::ordered_json;

void write_text(const std::string& path, const std::string& content);

Json json_matrix(const Cmat& M);   // complex entries as [re, im]
Json json_matrix(const Rmat& M);
Json json_vector(const Rvec& v);
Cmat matrix_from_json(const Json& j);

// Self-contained SVG: density histogram with optional reference curves.
std::string svg_histogram(
    const std::vector<double>& data, int bins, double lo, double hi,
    const std::string& title,
    const std::vector<std::pair<std::string, std::function<double(double)>>>&
        curves = {});

}  // namespace kfold
