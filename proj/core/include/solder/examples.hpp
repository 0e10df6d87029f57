#pragma once

#include <string>
#include <utility>
#include <vector>

namespace solder {

// Bundled check scripts, usable as documentation and as smoke tests.
std::vector<std::pair<std::string, std::string>> builtin_example_names();

// Script text by name; throws UnknownExample.
std::string builtin_example(const std::string& name);

}  // namespace solder
