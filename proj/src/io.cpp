#include "zrabi/io.hpp"

#include "zrabi/errors.hpp"

#include <charconv>
#include <fstream>

namespace zrabi {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 15);
    return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::string& path) : path_(path) {}

void CsvWriter::comment(const std::string& line) {
    buffer_ += "# " + line + "\n";
}

void CsvWriter::header(const std::vector<std::string>& columns) {
    row(columns);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i)
            buffer_ += ',';
        buffer_ += cells[i];
    }
    buffer_ += '\n';
}

void CsvWriter::close() {
    if (closed_)
        return;
    std::ofstream out(path_, std::ios::binary);
    if (!out)
        throw Error("CsvWriter: cannot open '" + path_ + "' for writing");
    out << buffer_;
    out.flush();
    if (!out)
        throw Error("CsvWriter: write to '" + path_ + "' failed");
    closed_ = true;
}

} // namespace zrabi
