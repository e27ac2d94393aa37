#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support/fixtures.hpp"

#include <scrapmem/corpus.hpp>
#include <scrapmem/raster.hpp>

#include <fstream>

using namespace scrapmem;

TEST_CASE("empty manifest ingests to an empty corpus") {
    auto dir = fixtures::fresh_dir("empty");
    auto manifest = fixtures::write_corpus(dir, {});
    Corpus corpus = ingest(manifest);
    CHECK(corpus.items.empty());
    CHECK(corpus.by_day.empty());
}

TEST_CASE("hotel confirmation email lands in its UTC day bucket") {
    auto dir = fixtures::fresh_dir("hotel");
    fixtures::ManifestItem item;
    item.id = "mail-1";
    item.kind = "text";
    item.timestamp = "2022-05-07T09:12";
    item.payload = "Your reservation at Grand Plaza Lisbon from May 10 to May 12 is confirmed. "
                   "Total 240 EUR.";
    item.meta = {{"subject", "Hotel booking confirmation"}};
    Corpus corpus = ingest(fixtures::write_corpus(dir, {item}));

    REQUIRE(corpus.by_day.size() == 1);
    CivilDate day{2022, 5, 7};
    REQUIRE(corpus.by_day.count(day) == 1);
    CHECK(corpus.by_day.at(day) == std::vector<std::string>{"mail-1"});
    CHECK(to_string(day) == "2022-05-07");
}

TEST_CASE("same-day items are bucketed in timestamp order") {
    auto dir = fixtures::fresh_dir("order");
    auto make = [](const char* id, const char* ts) {
        fixtures::ManifestItem m;
        m.id = id;
        m.kind = "text";
        m.timestamp = ts;
        m.payload = "x";
        return m;
    };
    Corpus corpus = ingest(fixtures::write_corpus(
        dir, {make("a", "2023-03-01T09:00"), make("b", "2023-03-01T08:00"),
              make("c", "2023-03-01T10:00")}));
    REQUIRE(corpus.by_day.size() == 1);
    CHECK(corpus.by_day.begin()->second == std::vector<std::string>{"b", "a", "c"});
}

TEST_CASE("validation failures carry line context") {
    auto dir = fixtures::fresh_dir("invalid");
    auto make = [](const char* id, const char* ts) {
        fixtures::ManifestItem m;
        m.id = id;
        m.kind = "text";
        m.timestamp = ts;
        m.payload = "x";
        return m;
    };

    SUBCASE("duplicate id") {
        fixtures::write_corpus(dir, {make("dup", "2023-01-01T10:00"),
                                     make("dup", "2023-01-02T10:00")});
        try {
            ingest(dir / "manifest.jsonl");
            FAIL("expected ValidationError");
        } catch (const ValidationError& e) {
            CHECK(std::string(e.what()).find("line 2") != std::string::npos);
            CHECK(std::string(e.what()).find("dup") != std::string::npos);
        }
    }
    SUBCASE("unparseable timestamp") {
        fixtures::write_corpus(dir, {make("a", "not-a-time")});
        CHECK_THROWS_AS(ingest(dir / "manifest.jsonl"), ValidationError);
    }
    SUBCASE("missing media file") {
        fixtures::ManifestItem img;
        img.id = "img-1";
        img.kind = "image";
        img.timestamp = "2023-01-01T10:00";
        img.payload = "does-not-exist.png";
        fixtures::write_corpus(dir, {img});
        try {
            ingest(dir / "manifest.jsonl");
            FAIL("expected ValidationError");
        } catch (const ValidationError& e) {
            CHECK(std::string(e.what()).find("does-not-exist.png") != std::string::npos);
        }
    }
}

TEST_CASE("timestamps parse with seconds, zones, and bare minutes") {
    CHECK(parse_iso8601("2022-05-07T09:12").epoch_seconds ==
          parse_iso8601("2022-05-07T09:12:00Z").epoch_seconds);
    // +02:00 is two hours behind UTC wall time
    CHECK(parse_iso8601("2022-05-07T11:12+02:00").epoch_seconds ==
          parse_iso8601("2022-05-07T09:12Z").epoch_seconds);
    CHECK(parse_iso8601("2022-05-07T23:59:58").utc_date() == CivilDate{2022, 5, 7});
    CHECK_THROWS_AS(parse_iso8601("2022-13-07T09:12"), ValidationError);
}

TEST_CASE("partition: every item lands in exactly one bucket") {
    auto fx = fixtures::make_synthetic_corpus(11, 8, {2023, 2, 1}, false);
    Corpus corpus = ingest(fx.dir / "manifest.jsonl");
    std::size_t total = 0;
    std::set<std::string> seen;
    for (const auto& [date, ids] : corpus.by_day) {
        total += ids.size();
        for (const auto& id : ids) {
            CHECK(seen.insert(id).second);
            CHECK(corpus.item(id).timestamp.utc_date() == date);
        }
    }
    CHECK(total == corpus.items.size());
}

TEST_CASE("round-trip: saved manifest reproduces buckets and ordering byte-identically") {
    auto fx = fixtures::make_synthetic_corpus(13, 6, {2023, 4, 1}, false);
    Corpus corpus = ingest(fx.dir / "manifest.jsonl");

    auto out1 = fixtures::fresh_dir("roundtrip1") / "manifest.jsonl";
    save_manifest(corpus, out1);
    Corpus reloaded = ingest(out1);
    CHECK(reloaded.by_day == corpus.by_day);

    auto out2 = fixtures::fresh_dir("roundtrip2") / "manifest.jsonl";
    save_manifest(reloaded, out2);
    std::ifstream f1(out1, std::ios::binary), f2(out2, std::ios::binary);
    std::string s1((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
    std::string s2((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
    CHECK(s1 == s2);
    CHECK_FALSE(s1.empty());
}

TEST_CASE("video keyframes sample uniform offsets") {
    auto dir = fixtures::fresh_dir("video");
    auto clip = dir / "clip.avi";
    // 60 s at 2 fps = 120 frames
    fixtures::write_watermarked_clip(clip, 120, 2.0);

    SUBCASE("n=4 on a 60 s clip picks 7.5/22.5/37.5/52.5 s") {
        auto frames = video_keyframes_from_file(clip, 4, "clip");
        REQUIRE(frames.size() == 4);
        // oracle: frame index floor((i+0.5)*120/4) = 15, 45, 75, 105
        int expected[] = {15, 45, 75, 105};
        for (int i = 0; i < 4; ++i) {
            int value = fixtures::frame_value(frames[static_cast<std::size_t>(i)]);
            CHECK(std::abs(value - (expected[i] * 2) % 256) <= 6);  // JPEG wobble
        }
    }
    SUBCASE("n=1 picks the midpoint frame") {
        auto frames = video_keyframes_from_file(clip, 1, "clip");
        REQUIRE(frames.size() == 1);
        CHECK(std::abs(fixtures::frame_value(frames[0]) - (60 * 2) % 256) <= 6);
    }
    SUBCASE("n larger than the clip clamps to available frames") {
        auto tiny = dir / "tiny.avi";
        fixtures::write_watermarked_clip(tiny, 3, 2.0);
        auto frames = video_keyframes_from_file(tiny, 10, "tiny");
        CHECK(frames.size() == 3);
    }
    SUBCASE("undecodable video carries the item id") {
        auto bogus = dir / "bogus.avi";
        std::ofstream(bogus) << "not a video";
        try {
            video_keyframes_from_file(bogus, 4, "item-7");
            FAIL("expected ValidationError");
        } catch (const ValidationError& e) {
            CHECK(std::string(e.what()).find("item-7") != std::string::npos);
        }
    }
}

TEST_CASE("keyframe extraction is deterministic for a fixed file") {
    auto dir = fixtures::fresh_dir("video_det");
    auto clip = dir / "clip.avi";
    fixtures::write_watermarked_clip(clip, 40, 2.0);
    auto a = video_keyframes_from_file(clip, 4, "clip");
    auto b = video_keyframes_from_file(clip, 4, "clip");
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(cv::countNonZero(cv::Mat(a[i] != b[i]).reshape(1)) == 0);
    }
}
