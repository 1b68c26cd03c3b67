#pragma once

#include <map>
#include <string>

// Cover orders and irrep class labels as listed for each builtin group.
namespace printed {

inline const std::map<std::string, int> kCoverOrder = {{"Z2xZ2", 8}, {"D4", 16}, {"A4", 24}, {"S4", 48}};

inline const std::map<std::string, std::map<std::string, char>> kClasses = {
    {"Z2xZ2", {{"1_(0,0)", 'e'}, {"1_(0,1)", 'e'}, {"1_(1,0)", 'e'}, {"1_(1,1)", 'e'}, {"2~", 'a'}}},
    {"D4",
     {{"1_(0,0)", 'e'}, {"1_(0,1)", 'e'}, {"1_(1,0)", 'e'}, {"1_(1,1)", 'e'}, {"2_(2)", 'e'}, {"2~_(1)", 'a'},
      {"2~_(3)", 'a'}}},
    {"A4", {{"1_(0)", 'e'}, {"1_(1)", 'e'}, {"1_(2)", 'e'}, {"3", 'e'}, {"2~_(0)", 'a'}, {"2~_(1)", 'a'}, {"2~_(2)", 'a'}}},
    {"S4",
     {{"1_(0)", 'e'}, {"1_(1)", 'e'}, {"2", 'e'}, {"3_(0)", 'e'}, {"3_(1)", 'e'}, {"2~_(0)", 'a'}, {"2~_(1)", 'a'},
      {"4~", 'a'}}},
};

}  // namespace printed
