/*
 * Copyright 2026 the mrsnn authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mrsnn {

/// IDX magic numbers for the two record types we ingest.
inline constexpr std::uint32_t kIdxImageMagic = 0x00000803;  // 3-D u8 tensor
inline constexpr std::uint32_t kIdxLabelMagic = 0x00000801;  // u8 vector

struct IdxImages {
    int count = 0;
    int height = 0;
    int width = 0;
    std::vector<std::uint8_t> pixels;  // count * height * width, row-major
};

struct IdxLabels {
    int count = 0;
    std::vector<std::uint8_t> labels;
};

struct IdxDataset {
    IdxImages images;
    IdxLabels labels;
};

/// Parse a big-endian IDX image file (magic 0x00000803).
/// Throws BadMagic / TruncatedFile.
IdxImages load_idx_images(const std::string& path);

/// Parse a big-endian IDX label file (magic 0x00000801).
IdxLabels load_idx_labels(const std::string& path);

/// Load an image/label pair and check the record counts agree
/// (CountMismatch otherwise).
IdxDataset load_idx(const std::string& images_path,
                    const std::string& labels_path);

}  // namespace mrsnn
