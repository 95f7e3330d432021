#pragma once

#include <fstream>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace spamflow::util {

// Minimal RFC-4180 subset: fields are quoted only when they contain a comma,
// quote, or newline. Output uses '\n' line endings unconditionally so emitted
// files are byte-stable across platforms.
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    void row(const std::vector<std::string>& fields);

private:
    std::ostream& out_;
};

std::string csv_escape(std::string_view field);

// Parses one CSV line into fields, honoring double-quote escaping.
std::vector<std::string> csv_split(std::string_view line);

// Streams a CSV file line by line. When `expect_header` is true the first
// line is skipped. Strips a UTF-8 BOM and trailing '\r'. The callback gets
// the 1-based line number and the parsed fields; blank lines are ignored.
void for_each_csv_row(const std::string& path, bool expect_header,
                      const std::function<void(std::size_t, const std::vector<std::string>&)>& fn);

// Opens an output file, throwing ConfigError on failure.
std::ofstream open_output(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace spamflow::util
