#pragma once

#include <string>
#include <vector>

namespace claimsentinel {

// Shortest decimal string that round-trips to the same double.
std::string format_double(double x);

// Writes to "<path>.tmp" then renames, so readers never see partial files.
void write_text_atomic(const std::string& path, const std::string& content);

// Minimal CSV builder: fixed header, one row at a time. Fields containing
// commas/quotes/newlines are quoted per RFC 4180.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);

    void add_row(const std::vector<std::string>& fields);
    const std::string& content() const { return content_; }
    void write(const std::string& path) const { write_text_atomic(path, content_); }

private:
    std::size_t width_;
    std::string content_;
};

}  // namespace claimsentinel
