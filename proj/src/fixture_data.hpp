#pragma once

#include <string_view>
#include <vector>

namespace gendertime::detail {

struct FixtureFile {
  int year;
  std::string_view content;
};

const std::vector<FixtureFile>& fixture_files();

}  // namespace gendertime::detail
