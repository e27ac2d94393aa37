#pragma once
// Raster plumbing behind the page pipeline: JPEG codec with an explicit
// quality knob, area-filter resizing, bitmap-font text rendering, and
// keyframe extraction from video files. All operations are deterministic
// for fixed inputs.

#include <scrapmem/errors.hpp>
#include <scrapmem/font.hpp>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>
#include <opencv2/videoio.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace scrapmem {

using Raster = cv::Mat;  // always CV_8UC3, BGR

inline Raster solid_raster(int width, int height, cv::Scalar color = {255, 255, 255}) {
    return Raster(height, width, CV_8UC3, color);
}

inline std::vector<std::uint8_t> encode_jpeg(const Raster& img, int quality) {
    std::vector<std::uint8_t> buf;
    if (!cv::imencode(".jpg", img, buf, {cv::IMWRITE_JPEG_QUALITY, quality}))
        throw StoreError("JPEG encode failed");
    return buf;
}

inline Raster decode_image_bytes(const std::vector<std::uint8_t>& bytes,
                                 const std::string& what) {
    Raster img = cv::imdecode(bytes, cv::IMREAD_COLOR);
    if (img.empty()) throw ValidationError("undecodable image: " + what);
    return img;
}

inline Raster load_image(const std::filesystem::path& path, const std::string& item_id) {
    Raster img = cv::imread(path.string(), cv::IMREAD_COLOR);
    if (img.empty())
        throw ValidationError("undecodable image (item " + item_id + "): " + path.string());
    return img;
}

// Scale to an exact target width, height follows aspect (at least 1 px).
inline Raster resize_to_width(const Raster& img, int target_width) {
    int h = static_cast<int>(
        std::llround(static_cast<double>(img.rows) * target_width / img.cols));
    if (h < 1) h = 1;
    Raster out;
    cv::resize(img, out, cv::Size(target_width, h), 0, 0, cv::INTER_AREA);
    return out;
}

inline Raster resize_by_ratio(const Raster& img, double ratio) {
    int w = static_cast<int>(std::llround(img.cols * ratio));
    int h = static_cast<int>(std::llround(img.rows * ratio));
    if (w < 1) w = 1;
    if (h < 1) h = 1;
    Raster out;
    cv::resize(img, out, cv::Size(w, h), 0, 0, cv::INTER_AREA);
    return out;
}

inline void blit(Raster& dst, const Raster& src, int x, int y) {
    src.copyTo(dst(cv::Rect(x, y, src.cols, src.rows)));
}

// One line of bitmap-font text at integer scale; clips at the raster edge.
inline void draw_text_line(Raster& img, int x, int y, const std::string& text, int scale = 1,
                           cv::Vec3b color = {0, 0, 0}) {
    int cx = x;
    for (char ch : text) {
        if (cx + font::kGlyphWidth * scale > img.cols) break;
        const auto& rows = font::glyph(ch);
        for (int gy = 0; gy < font::kGlyphHeight; ++gy) {
            for (int gx = 0; gx < font::kGlyphWidth; ++gx) {
                if (!(rows[gy] >> gx & 1)) continue;
                for (int sy = 0; sy < scale; ++sy) {
                    for (int sx = 0; sx < scale; ++sx) {
                        int py = y + gy * scale + sy;
                        int px = cx + gx * scale + sx;
                        if (py >= 0 && py < img.rows && px >= 0 && px < img.cols)
                            img.at<cv::Vec3b>(py, px) = color;
                    }
                }
            }
        }
        cx += font::kGlyphWidth * scale;
    }
}

// Uniform-offset keyframe sampling: m = min(n, frame_count) frames at source
// indices floor((i + 0.5) * frame_count / m). A single sequential decode pass
// keeps results reproducible across container quirks.
inline std::vector<Raster> video_keyframes_from_file(const std::filesystem::path& path, int n,
                                                     const std::string& item_id) {
    if (n < 1) throw ValidationError("keyframe count must be >= 1 (item " + item_id + ")");
    cv::VideoCapture cap(path.string());
    if (!cap.isOpened())
        throw ValidationError("undecodable video (item " + item_id + "): " + path.string());

    std::vector<Raster> frames;
    Raster frame;
    while (cap.read(frame)) frames.push_back(frame.clone());
    if (frames.empty())
        throw ValidationError("undecodable video (item " + item_id + "): no frames decoded");

    const std::int64_t count = static_cast<std::int64_t>(frames.size());
    const std::int64_t m = std::min<std::int64_t>(n, count);
    std::vector<Raster> out;
    out.reserve(static_cast<std::size_t>(m));
    for (std::int64_t i = 0; i < m; ++i) {
        auto idx = static_cast<std::size_t>((2 * i + 1) * count / (2 * m));
        out.push_back(frames[idx]);
    }
    return out;
}

}  // namespace scrapmem
