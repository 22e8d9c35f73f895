#include "ppiphylo/error.hpp"

#include <atomic>
#include <iostream>
#include <mutex>

namespace ppiphylo {

namespace {

void stderr_warning(const std::string& message) {
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    std::cerr << "warning: " << message << '\n';
}

std::atomic<WarningHandler> g_handler{&stderr_warning};

std::string with_line(const std::string& what, std::size_t line) {
    if (line == 0) return what;
    return "line " + std::to_string(line) + ": " + what;
}

}  // namespace

FormatError::FormatError(const std::string& what, std::size_t line)
    : Error(with_line(what, line)), line_(line) {}

int exit_code_for(const std::exception& e) noexcept {
    if (dynamic_cast<const FormatError*>(&e)) return 2;
    if (dynamic_cast<const DataError*>(&e)) return 3;
    if (dynamic_cast<const ConfigError*>(&e)) return 4;
    if (dynamic_cast<const DomainError*>(&e)) return 4;
    return 1;
}

void set_warning_handler(WarningHandler handler) {
    g_handler.store(handler ? handler : &stderr_warning);
}

void warn(const std::string& message) { g_handler.load()(message); }

}  // namespace ppiphylo
