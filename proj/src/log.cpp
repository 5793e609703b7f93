#include "covreg/log.hpp"

#include <iostream>
#include <utility>

namespace covreg {

namespace {

std::function<void(const std::string &)> &sink() {
  static std::function<void(const std::string &)> s = [](const std::string &msg) {
    std::cerr << "warning: " << msg << '\n';
  };
  return s;
}

} // namespace

void warn(const std::string &msg) {
  if (sink()) {
    sink()(msg);
  }
}

std::function<void(const std::string &)>
set_warning_sink(std::function<void(const std::string &)> s) {
  return std::exchange(sink(), std::move(s));
}

} // namespace covreg
