#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "sptkit/errors.hpp"
#include "sptkit/group.hpp"

namespace sptkit {
namespace {

struct BuiltinSource {
  std::string_view name;
  std::string_view json;
};

// Faithful generators of each Schur cover and the generator images of every irrep.
constexpr std::array<BuiltinSource, 4> kBuiltins{{
    {"Z2xZ2", R"json({
  "name": "Z2xZ2", "cover": "D8",
  "generator_names": ["a","x"],
  "generator_matrices": [
    [[[0,1],0],[0,[0,-1]]],
    [[0,1],[1,0]]
  ],
  "center_kernel_word": "a.a",
  "irreps": [
    {"label":"1_(0,0)","class":"e","generator_images":{"a":[[1]],"x":[[1]]}},
    {"label":"1_(0,1)","class":"e","generator_images":{"a":[[1]],"x":[[-1]]}},
    {"label":"1_(1,0)","class":"e","generator_images":{"a":[[-1]],"x":[[1]]}},
    {"label":"1_(1,1)","class":"e","generator_images":{"a":[[-1]],"x":[[-1]]}},
    {"label":"2~","class":"a","generator_images":{"a":[[[0,1],0],[0,[0,-1]]],"x":[[0,1],[1,0]]}}
  ]
})json"},
    {"D4", R"json({
  "name": "D4", "cover": "Q16",
  "generator_names": ["a","x"],
  "generator_matrices": [
    [[0.7071067811865475,-0.7071067811865475],[0.7071067811865475,0.7071067811865475]],
    [[[0,1],0],[0,[0,-1]]]
  ],
  "center_kernel_word": "x.x",
  "irreps": [
    {"label":"1_(0,0)","class":"e","generator_images":{"a":[[1]],"x":[[1]]}},
    {"label":"1_(0,1)","class":"e","generator_images":{"a":[[1]],"x":[[-1]]}},
    {"label":"1_(1,0)","class":"e","generator_images":{"a":[[-1]],"x":[[1]]}},
    {"label":"1_(1,1)","class":"e","generator_images":{"a":[[-1]],"x":[[-1]]}},
    {"label":"2_(2)","class":"e","generator_images":{"a":[[0,1],[-1,0]],"x":[[1,0],[0,-1]]}},
    {"label":"2~_(1)","class":"a","generator_images":{"a":[[0.7071067811865475,-0.7071067811865475],[0.7071067811865475,0.7071067811865475]],"x":[[[0,1],0],[0,[0,-1]]]}},
    {"label":"2~_(3)","class":"a","generator_images":{"a":[[-0.7071067811865475,-0.7071067811865475],[0.7071067811865475,-0.7071067811865475]],"x":[[[0,1],0],[0,[0,-1]]]}}
  ]
})json"},
    {"A4", R"json({
  "name": "A4", "cover": "2T",
  "generator_names": ["a","x"],
  "generator_matrices": [
    [[[0.5,0.5],[0.5,0.5]],[[-0.5,0.5],[0.5,-0.5]]],
    [[0,[0,1]],[[0,1],0]]
  ],
  "center_kernel_word": "x.x",
  "irreps": [
    {"label":"1_(0)","class":"e","generator_images":{"a":[[1]],"x":[[1]]}},
    {"label":"1_(1)","class":"e","generator_images":{"a":[[[-0.4999999999999998,0.8660254037844387]]],"x":[[1]]}},
    {"label":"1_(2)","class":"e","generator_images":{"a":[[[-0.5000000000000003,-0.8660254037844384]]],"x":[[1]]}},
    {"label":"3","class":"e","generator_images":{"a":[[0,1,0],[0,0,1],[1,0,0]],"x":[[1,0,0],[0,-1,0],[0,0,-1]]}},
    {"label":"2~_(0)","class":"a","generator_images":{"a":[[[0.5,0.5],[0.5,0.5]],[[-0.5,0.5],[0.5,-0.5]]],"x":[[0,[0,1]],[[0,1],0]]}},
    {"label":"2~_(1)","class":"a","generator_images":{"a":[[[-0.6830127018922192,0.18301270189221946],[-0.6830127018922192,0.18301270189221946]],[[-0.18301270189221946,-0.6830127018922192],[0.18301270189221946,0.6830127018922192]]],"x":[[0,[0,1]],[[0,1],0]]}},
    {"label":"2~_(2)","class":"a","generator_images":{"a":[[[0.18301270189221902,-0.6830127018922194],[0.18301270189221902,-0.6830127018922194]],[[0.6830127018922194,0.18301270189221902],[-0.6830127018922194,-0.18301270189221902]]],"x":[[0,[0,1]],[[0,1],0]]}}
  ]
})json"},
    {"S4", R"json({
  "name": "S4", "cover": "O'",
  "generator_names": ["t","k","s"],
  "generator_matrices": [
    [[[0,0.7071067811865475],-0.7071067811865475],[0.7071067811865475,[0,-0.7071067811865475]]],
    [[0,[0,1]],[[0,1],0]],
    [[[0.5,0.5],[0.5,0.5]],[[-0.5,0.5],[0.5,-0.5]]]
  ],
  "center_kernel_word": "k.k",
  "irreps": [
    {"label":"1_(0)","class":"e","generator_images":{"t":[[1]],"k":[[1]],"s":[[1]]}},
    {"label":"1_(1)","class":"e","generator_images":{"t":[[-1]],"k":[[1]],"s":[[1]]}},
    {"label":"2","class":"e","generator_images":{"t":[[0,1],[1,0]],"k":[[1,0],[0,1]],"s":[[[-0.4999999999999998,0.8660254037844387],0],[0,[-0.4999999999999998,-0.8660254037844387]]]}},
    {"label":"3_(0)","class":"e","generator_images":{"t":[[1,0,0],[0,0,1],[0,1,0]],"k":[[1,0,0],[0,-1,0],[0,0,-1]],"s":[[0,1,0],[0,0,1],[1,0,0]]}},
    {"label":"3_(1)","class":"e","generator_images":{"t":[[-1,0,0],[0,0,-1],[0,-1,0]],"k":[[1,0,0],[0,-1,0],[0,0,-1]],"s":[[0,1,0],[0,0,1],[1,0,0]]}},
    {"label":"2~_(0)","class":"a","generator_images":{"t":[[[0,0.7071067811865475],-0.7071067811865475],[0.7071067811865475,[0,-0.7071067811865475]]],"k":[[0,[0,1]],[[0,1],0]],"s":[[[0.5,0.5],[0.5,0.5]],[[-0.5,0.5],[0.5,-0.5]]]}},
    {"label":"2~_(1)","class":"a","generator_images":{"t":[[[0,-0.7071067811865475],0.7071067811865475],[-0.7071067811865475,[0,0.7071067811865475]]],"k":[[0,[0,1]],[[0,1],0]],"s":[[[0.5,0.5],[0.5,0.5]],[[-0.5,0.5],[0.5,-0.5]]]}},
    {"label":"4~","class":"a","generator_images":{"t":[[0,0,[0,0.7071067811865475],-0.7071067811865475],[0,0,0.7071067811865475,[0,-0.7071067811865475]],[[0,0.7071067811865475],-0.7071067811865475,0,0],[0.7071067811865475,[0,-0.7071067811865475],0,0]],"k":[[0,[0,1],0,0],[[0,1],0,0,0],[0,0,0,[0,1]],[0,0,[0,1],0]],"s":[[[-0.6830127018922192,0.18301270189221946],[-0.6830127018922192,0.18301270189221946],0,0],[[-0.18301270189221946,-0.6830127018922192],[0.18301270189221946,0.6830127018922192],0,0],[0,0,[0.18301270189221946,-0.6830127018922192],[0.18301270189221946,-0.6830127018922192]],[0,0,[0.6830127018922192,0.18301270189221946],[-0.6830127018922192,-0.18301270189221946]]]}}
  ]
})json"},
}};

}  // namespace

std::vector<std::string> builtin_group_names() {
  std::vector<std::string> names;
  for (const auto& b : kBuiltins) names.emplace_back(b.name);
  return names;
}

std::string_view builtin_group_source(std::string_view name) {
  for (const auto& b : kBuiltins)
    if (b.name == name) return b.json;
  throw Error(ErrorCode::UnknownGroup, std::string(name));
}

GroupData builtin_group(std::string_view name) { return parse_group_spec(builtin_group_source(name)); }

}  // namespace sptkit
