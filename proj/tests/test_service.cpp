#include <catch2/catch_amalgamated.hpp>

#include <atomic>
#include <cmath>
#include <cstring>
#include <string>
#include <thread>
#include <vector>

#include "httplib.h"
#include "json.hpp"
#include "support/bus_tables.hpp"
#include "wmsd/dataset.hpp"
#include "wmsd/service.hpp"
#include "wmsd/service_http.hpp"

using Catch::Matchers::WithinAbs;
using nlohmann::json;
using namespace wmsd;

namespace {

std::string bus_csv() { return read_text_file(WMSD_DATA_DIR "/buses.csv"); }
std::string bus_config() { return read_text_file(WMSD_DATA_DIR "/buses_tables.json"); }

std::string uniform_config(const std::string& extra = "") {
    return R"({"criteria": [)"
           R"({"name": "Speed", "direction": "gain", "range": [60, 90]},)"
           R"({"name": "Pressure", "direction": "gain", "range": [0, 2]},)"
           R"({"name": "Blacking", "direction": "cost", "range": [26, 95]},)"
           R"({"name": "Torque", "direction": "gain", "range": [400, 486]},)"
           R"({"name": "Summer", "direction": "cost", "range": [20, 27]},)"
           R"({"name": "Winter", "direction": "cost", "range": [23, 33]},)"
           R"({"name": "Oil", "direction": "cost", "range": [0, 4]},)"
           R"({"name": "HP", "direction": "gain", "range": [96, 148]}])" +
           extra + "}";
}

std::string create(ServiceCore& core, const std::string& config = bus_config()) {
    const auto r = core.create_session(bus_csv(), config);
    REQUIRE(r.status == 201);
    return json::parse(r.body).at("id").get<std::string>();
}

std::string base64_decode(const std::string& in) {
    static const std::string alphabet = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
    std::string out;
    unsigned buffer = 0;
    int bits = 0;
    for (char c : in) {
        if (c == '=') break;
        const auto pos = alphabet.find(c);
        REQUIRE(pos != std::string::npos);
        buffer = (buffer << 6) | static_cast<unsigned>(pos);
        bits += 6;
        if (bits >= 8) {
            bits -= 8;
            out.push_back(static_cast<char>((buffer >> bits) & 0xFF));
        }
    }
    return out;
}

std::vector<float> decode_floats(const std::string& b64) {
    const std::string bytes = base64_decode(b64);
    std::vector<float> out(bytes.size() / sizeof(float));
    std::memcpy(out.data(), bytes.data(), bytes.size());
    return out;
}

}  // namespace

TEST_CASE("session lifecycle and WMSD points", "[service]") {
    ServiceCore core(4, 1);
    const auto r = core.create_session(bus_csv(), bus_config());
    REQUIRE(r.status == 201);
    const auto body = json::parse(r.body);
    CHECK(body["alternatives"] == 10);
    CHECK(body["criteria"] == 8);
    const std::string id = body["id"];
    CHECK(id.size() == 32);

    const auto w = core.wmsd(id);
    REQUIRE(w.status == 200);
    const auto pts = json::parse(w.body)["points"];
    REQUIRE(pts.size() == 10);
    CHECK(pts[0]["id"] == "b03");
    CHECK_THAT(pts[0]["used"][0].get<double>(), WithinAbs(0.50, 1e-12));
    CHECK_THAT(pts[0]["used"][1].get<double>(), WithinAbs(0.22, 1e-12));

    CHECK(core.wmsd("nope").status == 404);
    CHECK(json::parse(core.wmsd("nope").body)["error"] == "UnknownSession");
}

TEST_CASE("ranking through the service matches the published positions", "[service]") {
    ServiceCore core(4, 2);
    const auto id = create(core);
    const auto r = core.rank(id, R"({"spec": {"family": "elliptic", "kind": "R", "epsilon": 1}})");
    REQUIRE(r.status == 200);
    const auto body = json::parse(r.body);
    CHECK(body["property_violating"] == false);
    std::vector<std::size_t> positions(bus::kBuses);
    for (const auto& e : body["entries"]) {
        const auto it = std::find(bus::kIds.begin(), bus::kIds.end(), e["id"].get<std::string>());
        positions[static_cast<std::size_t>(it - bus::kIds.begin())] = e["position"];
    }
    CHECK(positions == std::vector<std::size_t>(bus::kTableR[0].positions.begin(), bus::kTableR[0].positions.end()));

    const auto lex = json::parse(core.rank(id, R"({"spec": {"family": "lex", "lex": "RL"}})").body);
    CHECK(lex["entries"][0]["id"] == "b24");
    CHECK(lex["entries"][0]["score"].size() == 2);
}

TEST_CASE("service error mapping", "[service]") {
    ServiceCore core(4, 3);
    const auto id = create(core, uniform_config());

    auto r = core.field(id, R"({"spec": {"family": "elliptic", "kind": "I", "epsilon": 0.5}})");
    CHECK(r.status == 422);
    auto body = json::parse(r.body);
    CHECK(body["error"] == "EpsilonBelowLimit");
    CHECK(body["kind"] == "I");
    CHECK_THAT(body["limit"].get<double>(), WithinAbs(0.683, 5e-4));

    CHECK(core.rank(id, R"({"spec": {"family": "elliptic", "kind": "A", "epsilon": 0.6}})").status == 422);
    CHECK(core.rank(id, "{not json").status == 400);
    CHECK(core.rank(id, "[1]").status == 400);
    CHECK(core.rank(id, R"({"nospec": 1})").status == 400);
    CHECK(core.rank(id, R"({"spec": {"family": "weird"}})").status == 422);
    CHECK(core.rank(id, R"({"spec": {"family": "elliptic", "kind": "R", "epsilon": -1}})").status == 422);
    CHECK(core.field(id, R"({"spec": {"family": "M"}, "resolution": 8})").status == 422);
    CHECK(core.field(id, R"({"spec": {"family": "M"}, "resolution": "big"})").status == 400);
    CHECK(core.field(id, R"({"spec": {"family": "M"}, "encoding": "hex"})").status == 400);
    CHECK(core.field(id, R"({"spec": {"family": "lex", "lex": "RL3"}})").status == 422);
    CHECK(core.field(id, R"({"spec": {"family": "lex", "lex": "RL"}, "component": 2})").status == 422);
    CHECK(core.check_property(id, R"({"spec": {"family": "lex", "lex": "IL"}})").status == 422);
    CHECK(core.epsilon_limit(id, "Q").status == 422);
    CHECK(core.epsilon_limit(id, "").status == 400);

    CHECK(core.create_session("id,x\n", uniform_config()).status == 400);
    CHECK(core.create_session(bus_csv(), "{").status == 400);
    CHECK(core.create_session(bus_csv(), R"({"weights": [1, 0]})").status == 422);
    CHECK(core.create_session(bus_csv(), R"({"weights": [1], "bogus": 1})").status == 400);
}

TEST_CASE("forced specs are annotated", "[service]") {
    ServiceCore core(4, 4);
    const auto id = create(core, uniform_config());
    const auto r = core.rank(id, R"({"spec": {"family": "elliptic", "kind": "I", "epsilon": 0.5, "force": true}})");
    REQUIRE(r.status == 200);
    CHECK(json::parse(r.body)["property_violating"] == true);

    const auto forced_cfg = create(core, uniform_config(R"(, "force_epsilon": true)"));
    CHECK(core.rank(forced_cfg, R"({"spec": {"family": "elliptic", "kind": "I", "epsilon": 0.5}})").status == 200);
}

TEST_CASE("epsilon limits and boundary", "[service]") {
    ServiceCore core(4, 5);
    const auto id = create(core, uniform_config());
    auto body = json::parse(core.epsilon_limit(id, "A").body);
    CHECK_THAT(body["limit"].get<double>(), WithinAbs(0.683, 5e-4));
    CHECK(body["unbounded"] == false);
    body = json::parse(core.epsilon_limit(id, "R").body);
    CHECK(body["limit"].is_null());
    CHECK(body["unbounded"] == true);

    body = json::parse(core.boundary(id).body);
    CHECK(body["vertices"].size() == 9);
    CHECK(body["boundary"].front() == json::array({0.0, 0.0}));
    CHECK_THAT(body["boundary"].back()[0].get<double>(), WithinAbs(1.0, 1e-12));
}

TEST_CASE("field payloads", "[service]") {
    ServiceCore core(4, 6);
    const auto id = create(core, uniform_config());
    const auto r = core.field(id, R"({"spec": {"family": "M"}, "resolution": [32, 16]})");
    REQUIRE(r.status == 200);
    const auto body = json::parse(r.body);
    CHECK(body["nx"] == 32);
    CHECK(body["ny"] == 16);
    CHECK(body["encoding"] == "base64");
    const auto values = decode_floats(body["values"]);
    const auto mask = base64_decode(body["mask"]);
    REQUIRE(values.size() == 32 * 16);
    REQUIRE(mask.size() == 32 * 16);
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (mask[k]) {
            const double wm = (static_cast<double>(k % 32) + 0.5) / 32.0;
            CHECK_THAT(values[k], WithinAbs(wm, 1e-6));
        } else {
            CHECK(std::isnan(values[k]));
        }
    }

    const auto plain = json::parse(
        core.field(id, R"({"spec": {"family": "M"}, "resolution": 16, "encoding": "plain", "unclipped": true})").body);
    CHECK(plain["values"].size() == 256);
    for (const auto& v : plain["values"]) CHECK(v.is_number());

    const auto clipped =
        json::parse(core.field(id, R"({"spec": {"family": "M"}, "resolution": 16, "encoding": "plain"})").body);
    std::size_t nulls = 0;
    for (const auto& v : clipped["values"]) nulls += v.is_null();
    CHECK(nulls > 0);

    const auto windowed = json::parse(
        core.field(id, R"({"spec": {"family": "classic", "kind": "R"}, "resolution": 16, "window": {"wm_lo": 0.5}})")
            .body);
    CHECK(windowed["window"]["wm_lo"] == 0.5);
    CHECK(windowed["min"].get<double>() >= 0.5 - 1e-12);
}

TEST_CASE("property check through the service", "[service]") {
    ServiceCore core(4, 7);
    const std::string cfg = R"({"weights": [1.0, 0.6, 0.5]})";
    const auto r = core.create_session("id,a,b,c\nx,1,2,3\ny,2,1,0\n", cfg);
    REQUIRE(r.status == 201);
    const std::string id = json::parse(r.body)["id"];
    auto body = json::parse(core.check_property(
        id, R"({"spec": {"family": "elliptic", "kind": "I", "epsilon": 0.3333, "force": true}, "resolution": 128})")
                                .body);
    CHECK(body["satisfied"] == false);
    CHECK_THAT(body["min"].get<double>(), WithinAbs(-0.58, 0.02));
    body = json::parse(core.check_property(id, R"({"spec": {"family": "elliptic", "kind": "R", "epsilon": 0.1}})").body);
    CHECK(body["satisfied"] == true);
    CHECK(body["resolution"] == 256);
    CHECK(core.check_property(id, R"({"spec": {"family": "M"}, "resolution": 16})").status == 422);
}

TEST_CASE("responses are deterministic", "[service]") {
    ServiceCore core(4, 8);
    const auto id = create(core);
    CHECK(core.wmsd(id).body == core.wmsd(id).body);
    CHECK(core.boundary(id).body == core.boundary(id).body);
    const std::string req = R"({"spec": {"family": "elliptic", "kind": "A", "epsilon": 2.3}, "resolution": 64})";
    CHECK(core.field(id, req).body == core.field(id, req).body);
    CHECK(core.rank(id, req).body == core.rank(id, req).body);
}

TEST_CASE("least recently used sessions are evicted", "[service]") {
    ServiceCore core(2, 9);
    const auto a = create(core);
    const auto b = create(core);
    CHECK(core.wmsd(a).status == 200);
    const auto c = create(core);
    CHECK(core.size() == 2);
    CHECK(core.wmsd(a).status == 200);
    CHECK(core.wmsd(b).status == 404);
    CHECK(core.wmsd(c).status == 200);
    REQUIRE_THROWS_AS(ServiceCore(0), InvalidArgument);
}

TEST_CASE("session replacement is atomic for readers", "[service]") {
    ServiceCore core(4, 10);
    const auto id = create(core);
    const std::string two = "Bus,Speed,Pressure,Blacking,Torque,Summer,Winter,Oil,HP\n"
                            "x,72,2,73,425,23,27,2,112\ny,90,2,26,482,22,24,0,148\n";
    std::atomic<bool> stop{false};
    std::atomic<int> bad{0};
    std::vector<std::thread> readers;
    for (int t = 0; t < 4; ++t) {
        readers.emplace_back([&] {
            while (!stop) {
                const auto r = core.wmsd(id);
                const auto n = json::parse(r.body)["points"].size();
                if (r.status != 200 || (n != 10 && n != 2)) ++bad;
            }
        });
    }
    for (int i = 0; i < 40; ++i) {
        CHECK(core.replace_session(id, i % 2 ? bus_csv() : two, bus_config()).status == 200);
    }
    stop = true;
    for (auto& t : readers) t.join();
    CHECK(bad == 0);
    CHECK(core.replace_session("missing", bus_csv(), bus_config()).status == 404);
    CHECK(core.replace_session(id, "broken", bus_config()).status == 400);
    CHECK(core.wmsd(id).status == 200);
}

TEST_CASE("HTTP routes", "[service][http]") {
    ServiceCore core(8, 11);
    httplib::Server server;
    mount_routes(server, core);
    const int port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    std::thread thread([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    httplib::Client client("127.0.0.1", port);
    const json upload{{"csv", bus_csv()}, {"config", json::parse(bus_config())}};
    auto res = client.Post("/api/session", upload.dump(), "application/json");
    REQUIRE(res);
    REQUIRE(res->status == 201);
    const std::string id = json::parse(res->body)["id"];

    httplib::MultipartFormDataItems items{{"csv", bus_csv(), "buses.csv", "text/csv"},
                                          {"config", bus_config(), "buses.json", "application/json"}};
    res = client.Post("/api/session", items);
    REQUIRE(res);
    CHECK(res->status == 201);

    res = client.Post("/api/session", "{}", "application/json");
    REQUIRE(res);
    CHECK(res->status == 400);

    res = client.Get("/api/session/" + id + "/wmsd");
    REQUIRE(res);
    CHECK(res->status == 200);
    CHECK(res->get_header_value("Content-Type") == "application/json");
    CHECK(res->body == client.Get("/api/session/" + id + "/wmsd")->body);

    res = client.Get("/api/session/" + id + "/boundary");
    REQUIRE(res);
    CHECK(res->status == 200);

    res = client.Get("/api/session/" + id + "/epsilon-limit?kind=I");
    REQUIRE(res);
    CHECK_THAT(json::parse(res->body)["limit"].get<double>(), WithinAbs(0.683, 5e-4));

    res = client.Post("/api/session/" + id + "/rank", R"({"spec": {"family": "M"}})", "application/json");
    REQUIRE(res);
    CHECK(res->status == 200);

    res = client.Post("/api/session/" + id + "/field",
                      R"({"spec": {"family": "elliptic", "kind": "I", "epsilon": 0.5}})", "application/json");
    REQUIRE(res);
    CHECK(res->status == 422);
    CHECK(json::parse(res->body).contains("limit"));

    res = client.Post("/api/session/" + id + "/check-property",
                      R"({"spec": {"family": "classic", "kind": "R"}, "resolution": 32})", "application/json");
    REQUIRE(res);
    CHECK(json::parse(res->body)["satisfied"] == true);

    res = client.Put("/api/session/" + id, upload.dump(), "application/json");
    REQUIRE(res);
    CHECK(res->status == 200);

    res = client.Get("/api/session/unknown/wmsd");
    REQUIRE(res);
    CHECK(res->status == 404);

    server.stop();
    thread.join();
}
