#pragma once

#include <string>
#include <vector>

#include "brumer/group.hpp"

namespace fixtures {

inline brumer::GroupPtr S3() { return brumer::make_group(3, std::vector<std::string>{"(1,2,3)", "(1,2)"}); }
inline brumer::GroupPtr A4() { return brumer::make_group(4, std::vector<std::string>{"(1,2,3)", "(1,2)(3,4)"}); }
inline brumer::GroupPtr S4() { return brumer::make_group(4, std::vector<std::string>{"(1,2,3,4)", "(1,2)"}); }
inline brumer::GroupPtr V4() { return brumer::make_group(4, std::vector<std::string>{"(1,2)(3,4)", "(1,3)(2,4)"}); }
inline brumer::GroupPtr D4() { return brumer::make_group(4, std::vector<std::string>{"(1,2,3,4)", "(1,3)"}); }
inline brumer::GroupPtr Q8() {
  return brumer::make_group(8, std::vector<std::string>{"(1,3,2,4)(5,7,6,8)", "(1,5,2,6)(3,8,4,7)"});
}
inline brumer::GroupPtr C7C3() {
  return brumer::make_group(7, std::vector<std::string>{"(1,2,3,4,5,6,7)", "(2,3,5)(4,7,6)"});
}
inline brumer::GroupPtr SL23() {
  return brumer::make_group(8, std::vector<std::string>{"(1,4,7)(2,8,5)", "(1,6,2,3)(4,7,8,5)"});
}
inline brumer::GroupPtr Aff5() { return brumer::make_group(5, std::vector<std::string>{"(1,2,3,4,5)", "(2,3,5,4)"}); }
inline brumer::GroupPtr C1() { return brumer::make_group(1, std::vector<std::string>{}); }
inline brumer::GroupPtr C2() { return brumer::make_group(2, std::vector<std::string>{"(1,2)"}); }
inline brumer::GroupPtr C3() { return brumer::make_group(3, std::vector<std::string>{"(1,2,3)"}); }
inline brumer::GroupPtr C6() { return brumer::make_group(6, std::vector<std::string>{"(1,2,3,4,5,6)"}); }
inline brumer::GroupPtr C2xS3() {
  return brumer::make_group(5, std::vector<std::string>{"(1,2,3)", "(1,2)", "(4,5)"});
}

struct Named {
  std::string name;
  brumer::GroupPtr group;
};

inline std::vector<Named> all() {
  return {{"C1", C1()},     {"C2", C2()},   {"C3", C3()},       {"V4", V4()},   {"S3", S3()},
          {"C6", C6()},     {"D4", D4()},   {"Q8", Q8()},       {"A4", A4()},   {"C2xS3", C2xS3()},
          {"Aff(5)", Aff5()}, {"C7:C3", C7C3()}, {"S4", S4()}, {"SL(2,3)", SL23()}};
}

}  // namespace fixtures
