#include <filesystem>
#include <fstream>
#include <sstream>

#include "json_util.hpp"
#include "sptkit/errors.hpp"
#include "sptkit/group.hpp"

namespace sptkit {

using detail::json;

GroupData parse_group_spec(std::string_view json_text, double tol) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  try {
    GroupData gd;
    gd.name = doc.value("name", std::string("group"));
    std::vector<Mat> gens;
    for (const auto& m : doc.at("generator_matrices")) gens.push_back(detail::matrix_from_json(m));
    std::vector<std::string> names;
    if (doc.contains("generator_names")) names = doc["generator_names"].get<std::vector<std::string>>();
    const int max_order = doc.value("max_order", 4096);
    gd.table = enumerate_group(gens, max_order, names, tol);
    if (doc.contains("center_kernel_word")) {
      const auto word = parse_word(gd.table, doc["center_kernel_word"].get<std::string>());
      gd.table.center_kernel = gd.table.evaluate_word(word);
    }
    for (const auto& ir : doc.at("irreps")) {
      const auto& images = ir.at("generator_images");
      std::vector<Mat> imgs;
      for (const auto& gname : gd.table.generator_names) {
        if (!images.contains(gname))
          throw Error(ErrorCode::ParseError, "irrep missing image for generator " + gname);
        imgs.push_back(detail::matrix_from_json(images[gname]));
      }
      const auto cls = parse_class_tag(ir.value("class", std::string("e")));
      gd.irreps.push_back(materialize_irrep(gd.table, ir.at("label").get<std::string>(), cls, imgs, tol));
    }
    return gd;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

GroupData load_group_spec(const std::string& path, double tol) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open group file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_group_spec(ss.str(), tol);
}

GroupData resolve_group(std::string_view name_or_path) {
  for (const auto& n : builtin_group_names())
    if (n == name_or_path) return builtin_group(n);
  if (std::filesystem::exists(std::filesystem::path(name_or_path))) return load_group_spec(std::string(name_or_path));
  throw Error(ErrorCode::UnknownGroup, std::string(name_or_path));
}

}  // namespace sptkit
