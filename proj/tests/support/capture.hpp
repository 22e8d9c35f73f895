#pragma once

#include <mutex>
#include <string>
#include <vector>

#include "ppiphylo/error.hpp"

// Collects library warnings for the lifetime of the object.
class WarningCapture {
public:
    WarningCapture() {
        messages().clear();
        ppiphylo::set_warning_handler(&record);
    }
    ~WarningCapture() { ppiphylo::set_warning_handler(nullptr); }
    WarningCapture(const WarningCapture&) = delete;
    WarningCapture& operator=(const WarningCapture&) = delete;

    const std::vector<std::string>& all() const { return messages(); }
    std::size_t count() const { return messages().size(); }

private:
    static std::vector<std::string>& messages() {
        static std::vector<std::string> m;
        return m;
    }
    static void record(const std::string& s) {
        static std::mutex mu;
        std::lock_guard lock(mu);
        messages().push_back(s);
    }
};
