#pragma once

#include <string>
#include <vector>

#include "folmet/types.hpp"

namespace folmet::geo {

enum class CloudTag { Interior, Boundary, Generic };

/// Finite point sample at a declared grid pitch.
struct SampleCloud {
    std::vector<CPoint> points;
    double resolution = 0;
    CloudTag tag = CloudTag::Generic;
    bool empty_flagged = false;   // sampling produced nothing at this pitch
    bool truncated = false;       // budget cut the enumeration short

    int dim() const { return points.empty() ? 0 : points.front().dim(); }
    size_t size() const { return points.size(); }

    /// CSV: one row per point, columns re_1, im_1, ..., re_N, im_N, tag.
    std::string to_csv() const;
    static SampleCloud from_csv(const std::string& text);
};

const char* tag_name(CloudTag t);

} // namespace folmet::geo
