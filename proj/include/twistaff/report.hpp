#pragma once

#include <optional>
#include <string>
#include <vector>

namespace twistaff {

enum class Status { pass, fail, skipped };

struct ReportEntry {
    std::string suite;
    std::string check;
    Status status = Status::pass;
    std::optional<std::string> witness;
    double ms = 0;
};

struct Report {
    std::vector<ReportEntry> entries;

    void add(const std::string& suite, const std::string& check, Status st,
             std::optional<std::string> witness = std::nullopt, double ms = 0);
    void pass(const std::string& suite, const std::string& check, double ms = 0) {
        add(suite, check, Status::pass, std::nullopt, ms);
    }
    void fail(const std::string& suite, const std::string& check, const std::string& witness,
              double ms = 0) {
        add(suite, check, Status::fail, witness, ms);
    }
    void append(const Report& o);
    bool ok() const;
    size_t failures() const;
    const ReportEntry* find(const std::string& check) const;
};

const char* status_name(Status s);

}  // namespace twistaff
