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

#include "mrsnn/idx.hpp"

#include <fstream>

#include "mrsnn/errors.hpp"

namespace mrsnn {

namespace {

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw TruncatedFile("cannot open file: " + path);
    return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in),
                                     std::istreambuf_iterator<char>());
}

std::uint32_t read_be32(const std::vector<std::uint8_t>& buf,
                        std::size_t offset, const std::string& path) {
    if (offset + 4 > buf.size())
        throw TruncatedFile("file shorter than its header: " + path);
    return (static_cast<std::uint32_t>(buf[offset]) << 24) |
           (static_cast<std::uint32_t>(buf[offset + 1]) << 16) |
           (static_cast<std::uint32_t>(buf[offset + 2]) << 8) |
           static_cast<std::uint32_t>(buf[offset + 3]);
}

}  // namespace

IdxImages load_idx_images(const std::string& path) {
    const auto buf = read_file(path);
    if (read_be32(buf, 0, path) != kIdxImageMagic)
        throw BadMagic("not an IDX image file: " + path);
    IdxImages out;
    out.count = static_cast<int>(read_be32(buf, 4, path));
    out.height = static_cast<int>(read_be32(buf, 8, path));
    out.width = static_cast<int>(read_be32(buf, 12, path));
    const std::size_t expected = 16 + static_cast<std::size_t>(out.count) *
                                          out.height * out.width;
    if (buf.size() < expected)
        throw TruncatedFile("image payload truncated: " + path);
    out.pixels.assign(buf.begin() + 16, buf.begin() + static_cast<long>(expected));
    return out;
}

IdxLabels load_idx_labels(const std::string& path) {
    const auto buf = read_file(path);
    if (read_be32(buf, 0, path) != kIdxLabelMagic)
        throw BadMagic("not an IDX label file: " + path);
    IdxLabels out;
    out.count = static_cast<int>(read_be32(buf, 4, path));
    const std::size_t expected = 8 + static_cast<std::size_t>(out.count);
    if (buf.size() < expected)
        throw TruncatedFile("label payload truncated: " + path);
    out.labels.assign(buf.begin() + 8, buf.begin() + static_cast<long>(expected));
    return out;
}

IdxDataset load_idx(const std::string& images_path,
                    const std::string& labels_path) {
    IdxDataset ds;
    ds.images = load_idx_images(images_path);
    ds.labels = load_idx_labels(labels_path);
    if (ds.images.count != ds.labels.count)
        throw CountMismatch("image/label record counts differ");
    return ds;
}

}  // namespace mrsnn
