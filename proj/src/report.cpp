#include "twistaff/report.hpp"

namespace twistaff {

void Report::add(const std::string& suite, const std::string& check, Status st,
                 std::optional<std::string> witness, double ms) {
    if (st == Status::fail && !witness) witness = "unspecified";
    entries.push_back(ReportEntry{suite, check, st, std::move(witness), ms});
}

void Report::append(const Report& o) { entries.insert(entries.end(), o.entries.begin(), o.entries.end()); }

bool Report::ok() const { return failures() == 0; }

size_t Report::failures() const {
    size_t n = 0;
    for (const auto& e : entries)
        if (e.status == Status::fail) ++n;
    return n;
}

const ReportEntry* Report::find(const std::string& check) const {
    for (const auto& e : entries)
        if (e.check == check) return &e;
    return nullptr;
}

const char* status_name(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        default: return "skipped";
    }
}

}  // namespace twistaff
