// io.hpp — deterministic numeric formatting and CSV writing
//
// All numeric text output goes through format_double: up to 15 significant
// digits, '.' decimal separator, locale-independent, so identical runs give
// byte-identical files.

#pragma once

#include <string>
#include <vector>

namespace zrabi {

std::string format_double(double v);

// CSV file with '#'-prefixed header comments recording the resolved config.
class CsvWriter {
public:
    explicit CsvWriter(const std::string& path);

    void comment(const std::string& line);
    void header(const std::vector<std::string>& columns);
    void row(const std::vector<std::string>& cells);

    void close(); // flush and fail loudly on I/O errors

    static std::string cell(double v) { return format_double(v); }
    static std::string cell(int v) { return std::to_string(v); }

private:
    std::string path_;
    std::string buffer_;
    bool closed_ = false;
};

} // namespace zrabi
