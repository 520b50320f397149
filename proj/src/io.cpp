#include "feesim/io.hpp"

#include <cstdio>
#include <fstream>

#include "feesim/errors.hpp"

namespace feesim {

namespace {
constexpr const char* kModule = "io";
}

std::string format_full(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

void atomic_write_file(const std::filesystem::path& path, std::string_view content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw ResourceError(kModule, "cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw ResourceError(kModule, "write to " + tmp.string() + " failed");
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace feesim
