#pragma once

#include <string>

#include "grainstore/datagen.hpp"

namespace testutil {

struct GeneratedCron {
    std::string text;
    bool has_star = false;
    bool has_comma = false;
    bool has_dash = false;
    bool has_slash = false;
};

/// Random syntactically valid five-field expression exercising all four
/// token kinds.
inline GeneratedCron random_cron(grainstore::Rng& rng) {
    constexpr unsigned lo[5] = {0, 0, 1, 1, 0};
    constexpr unsigned hi[5] = {59, 23, 31, 12, 6};
    GeneratedCron out;
    for (int f = 0; f < 5; ++f) {
        std::string field;
        auto value = [&] { return std::to_string(rng.range(lo[f], hi[f])); };
        auto range_atom = [&](bool allow_step) {
            unsigned a = static_cast<unsigned>(rng.range(lo[f], hi[f]));
            unsigned b = static_cast<unsigned>(rng.range(a, hi[f]));
            std::string atom = std::to_string(a) + "-" + std::to_string(b);
            out.has_dash = true;
            if (allow_step && rng.below(3) == 0) {
                atom += "/" + std::to_string(1 + rng.below(10));
                out.has_slash = true;
            }
            return atom;
        };
        switch (rng.below(10)) {
        case 0:
        case 1:
        case 2:
            field = "*";
            out.has_star = true;
            break;
        case 3:
        case 4:
            field = "*/" + std::to_string(1 + rng.below(f == 0 ? 20 : 8));
            out.has_star = true;
            out.has_slash = true;
            break;
        default: {
            std::size_t atoms = 1 + rng.below(3);
            for (std::size_t i = 0; i < atoms; ++i) {
                if (i) {
                    field += ",";
                    out.has_comma = true;
                }
                field += rng.below(2) ? value() : range_atom(true);
            }
            break;
        }
        }
        if (f) out.text += " ";
        out.text += field;
    }
    return out;
}

} // namespace testutil
