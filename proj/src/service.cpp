#include "wmsd/service.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <limits>

#include "httplib.h"
#include "json.hpp"

namespace wmsd {

using nlohmann::json;

namespace {

struct NotFound : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BadRequest : std::runtime_error {
    using std::runtime_error::runtime_error;
};

ServiceResponse respond(int status, const json& body) { return {status, body.dump()}; }

json error_body(const std::string& name, const std::string& message) {
    return {{"error", name}, {"message", message}};
}

ServiceResponse guarded(const std::function<ServiceResponse()>& f) {
    try {
        return f();
    } catch (const NotFound& e) {
        return respond(404, error_body("UnknownSession", e.what()));
    } catch (const BadRequest& e) {
        return respond(400, error_body("MalformedRequest", e.what()));
    } catch (const EpsilonBelowLimit& e) {
        json body = error_body(e.name(), e.what());
        body["kind"] = std::string(1, e.kind());
        body["epsilon"] = e.epsilon();
        body["limit"] = e.limit();
        return respond(422, body);
    } catch (const Error& e) {
        return respond(e.category() == ErrorCategory::parse ? 400 : 422, error_body(e.name(), e.what()));
    } catch (const json::exception& e) {
        return respond(400, error_body("MalformedRequest", e.what()));
    } catch (const std::exception& e) {
        return respond(500, error_body("InternalError", e.what()));
    }
}

json parse_body(std::string_view body) {
    json j = parse_json(body);
    if (!j.is_object()) throw BadRequest("request body must be a JSON object");
    return j;
}

AnySpec body_spec(const json& body, const ProjectConfig& config) {
    if (!body.contains("spec")) throw BadRequest("request body needs a 'spec' object");
    AnySpec spec = with_force(spec_from_json(body.at("spec")), config.force_epsilon);
    validate(spec, config.weights);
    return spec;
}

std::size_t body_size(const json& body, const char* key, std::size_t fallback, std::size_t lo, std::size_t hi) {
    if (!body.contains(key)) return fallback;
    const json& v = body.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw BadRequest(std::string("'") + key + "' must be a non-negative integer");
    }
    const auto n = static_cast<std::size_t>(v.get<long long>());
    if (n < lo || n > hi) {
        throw InvalidArgument(std::string("'") + key + "' must lie in [" + std::to_string(lo) + ", " +
                              std::to_string(hi) + "]");
    }
    return n;
}

json point_json(const WmsdPoint& p) { return json::array({p.wm, p.wsd}); }

json window_json(const Window& w) {
    return {{"wm_lo", w.wm_lo}, {"wm_hi", w.wm_hi}, {"wsd_lo", w.wsd_lo}, {"wsd_hi", w.wsd_hi}};
}

Window window_from_json(const json& j, const Window& fallback) {
    if (j.is_null()) return fallback;
    if (!j.is_object()) throw BadRequest("'window' must be an object");
    Window w = fallback;
    const auto read = [&j](const char* key, double& out) {
        if (!j.contains(key)) return;
        if (!j.at(key).is_number()) throw BadRequest(std::string("window.") + key + " must be a number");
        out = j.at(key).get<double>();
    };
    read("wm_lo", w.wm_lo);
    read("wm_hi", w.wm_hi);
    read("wsd_lo", w.wsd_lo);
    read("wsd_hi", w.wsd_hi);
    return w;
}

json score_json(const Score& s) {
    if (const auto* x = std::get_if<double>(&s)) return *x;
    return std::get<LexTuple>(s).components;
}

std::string float32_base64(const std::vector<double>& values) {
    std::string bytes(values.size() * sizeof(float), '\0');
    for (std::size_t i = 0; i < values.size(); ++i) {
        const float f = static_cast<float>(values[i]);
        std::memcpy(bytes.data() + i * sizeof(float), &f, sizeof(float));
    }
    return httplib::detail::base64_encode(bytes);
}

std::shared_ptr<const Session> build_session(const std::string& id, std::string_view csv,
                                             std::string_view config_json) {
    ProjectConfig config = parse_config(config_json);
    DecisionMatrix dataset = load_dataset(csv, config);
    Analysis analysis = analyze(dataset, config);
    SpaceModel model(config.weights);
    return std::make_shared<const Session>(
        Session{id, std::move(dataset), std::move(config), std::move(analysis), std::move(model)});
}

}  // namespace

ServiceCore::ServiceCore(std::size_t capacity, std::uint64_t seed) : capacity_(capacity), rng_(seed) {
    if (capacity_ == 0) throw InvalidArgument("session capacity must be positive");
}

std::string ServiceCore::next_id() {
    std::lock_guard lock(mutex_);
    char buf[40];
    std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(rng_()),
                  static_cast<unsigned long long>(rng_()));
    return buf;
}

std::shared_ptr<const Session> ServiceCore::find(const std::string& id) {
    std::lock_guard lock(mutex_);
    const auto it = sessions_.find(id);
    if (it == sessions_.end()) throw NotFound("unknown session '" + id + "'");
    lru_.splice(lru_.begin(), lru_, it->second.position);
    return it->second.session;
}

void ServiceCore::store(std::shared_ptr<const Session> session) {
    std::lock_guard lock(mutex_);
    const std::string id = session->id;
    if (const auto it = sessions_.find(id); it != sessions_.end()) {
        it->second.session = std::move(session);
        lru_.splice(lru_.begin(), lru_, it->second.position);
        return;
    }
    lru_.push_front(id);
    sessions_[id] = Slot{std::move(session), lru_.begin()};
    while (sessions_.size() > capacity_) {
        sessions_.erase(lru_.back());
        lru_.pop_back();
    }
}

std::size_t ServiceCore::size() const {
    std::lock_guard lock(mutex_);
    return sessions_.size();
}

ServiceResponse ServiceCore::create_session(std::string_view csv, std::string_view config_json) {
    return guarded([&] {
        auto session = build_session(next_id(), csv, config_json);
        json body{{"id", session->id},
                  {"alternatives", session->dataset.rows()},
                  {"criteria", session->dataset.cols()},
                  {"warnings", session->analysis.warnings}};
        store(std::move(session));
        return respond(201, body);
    });
}

ServiceResponse ServiceCore::replace_session(const std::string& id, std::string_view csv,
                                             std::string_view config_json) {
    return guarded([&] {
        find(id);
        auto session = build_session(id, csv, config_json);
        json body{{"id", id},
                  {"alternatives", session->dataset.rows()},
                  {"criteria", session->dataset.cols()},
                  {"warnings", session->analysis.warnings}};
        store(std::move(session));
        return respond(200, body);
    });
}

ServiceResponse ServiceCore::wmsd(const std::string& id) {
    return guarded([&] {
        const auto s = find(id);
        json points = json::array();
        for (std::size_t i = 0; i < s->analysis.ids.size(); ++i) {
            points.push_back({{"id", s->analysis.ids[i]},
                              {"wm", s->analysis.wmsd[i].wm},
                              {"wsd", s->analysis.wmsd[i].wsd},
                              {"used", point_json(s->analysis.points[i])}});
        }
        return respond(200, {{"mean", s->config.weights.mean()},
                             {"rounding", s->config.rounding == RoundingMode::two_decimal_wmsd ? "two-decimal-wmsd"
                                                                                             : "full-precision"},
                             {"points", points}});
    });
}

ServiceResponse ServiceCore::boundary(const std::string& id) {
    return guarded([&] {
        const auto s = find(id);
        json boundary = json::array();
        for (const auto& p : s->model.boundary()) boundary.push_back(point_json(p));
        json vertices = json::array();
        for (const auto& p : s->model.vertices()) vertices.push_back(point_json(p));
        return respond(200, {{"mean", s->config.weights.mean()}, {"boundary", boundary}, {"vertices", vertices}});
    });
}

ServiceResponse ServiceCore::rank(const std::string& id, std::string_view body) {
    return guarded([&] {
        const auto s = find(id);
        const json req = parse_body(body);
        const AnySpec spec = body_spec(req, s->config);
        const RankedList ranked = rank_alternatives(s->analysis, spec, s->config);
        json entries = json::array();
        for (const auto& e : ranked.entries) {
            const auto& p = s->analysis.points[e.index];
            entries.push_back(
                {{"id", e.id}, {"score", score_json(e.score)}, {"position", e.position}, {"wm", p.wm}, {"wsd", p.wsd}});
        }
        return respond(200, {{"spec", spec_to_json(spec)},
                             {"label", spec_label(spec)},
                             {"property_violating", violates_limit(spec, s->config.weights)},
                             {"tolerance", ranking_tolerance(s->config)},
                             {"entries", entries}});
    });
}

ServiceResponse ServiceCore::field(const std::string& id, std::string_view body) {
    return guarded([&] {
        const auto s = find(id);
        const json req = parse_body(body);
        const AnySpec spec = body_spec(req, s->config);
        const WeightVector& w = s->config.weights;

        std::size_t nx = kDefaultFieldResolution;
        std::size_t ny = kDefaultFieldResolution;
        if (req.contains("resolution")) {
            const json& r = req.at("resolution");
            const auto check = [](const json& v) {
                if (!v.is_number_integer() || v.get<long long>() < 0) throw BadRequest("resolution must be integer");
                const auto n = static_cast<std::size_t>(v.get<long long>());
                if (n < kMinFieldResolution || n > kMaxFieldResolution) {
                    throw InvalidArgument("resolution must lie in [" + std::to_string(kMinFieldResolution) + ", " +
                                          std::to_string(kMaxFieldResolution) + "]");
                }
                return n;
            };
            if (r.is_array() && r.size() == 2) {
                nx = check(r[0]);
                ny = check(r[1]);
            } else {
                nx = ny = check(r);
            }
        }
        bool unclipped = false;
        if (req.contains("unclipped")) {
            if (!req.at("unclipped").is_boolean()) throw BadRequest("'unclipped' must be a boolean");
            unclipped = req.at("unclipped").get<bool>();
        }
        std::string encoding = "base64";
        if (req.contains("encoding")) {
            if (req.at("encoding") != "base64" && req.at("encoding") != "plain") {
                throw BadRequest("'encoding' must be \"base64\" or \"plain\"");
            }
            encoding = req.at("encoding").get<std::string>();
        }
        const Window window = window_from_json(req.value("window", json()), default_window(w));

        std::function<double(const WmsdPoint&)> f;
        if (const auto* agg = std::get_if<AggregationSpec>(&spec)) {
            f = [g = Aggregator(*agg, w)](const WmsdPoint& p) { return g(p); };
        } else {
            const auto& lex = std::get<LexSpec>(spec);
            if (lex.variant == LexVariant::RL3) {
                throw InvalidArgument("RL3 depends on the full weighted-utility vector and has no WMSD field");
            }
            const std::size_t component = body_size(req, "component", 0, 0, lex.dimension() - 1);
            f = [lex, w, component](const WmsdPoint& p) { return lex_tuple(lex, p, {}, w)[component]; };
        }
        ScalarField fld = scalar_field(f, s->model, window, nx, ny);

        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (std::size_t k = 0; k < fld.values.size(); ++k) {
            if (!unclipped && !fld.mask[k]) {
                fld.values[k] = std::numeric_limits<double>::quiet_NaN();
                continue;
            }
            lo = std::min(lo, fld.values[k]);
            hi = std::max(hi, fld.values[k]);
        }
        json out{{"spec", spec_to_json(spec)},
                 {"label", spec_label(spec)},
                 {"property_violating", violates_limit(spec, w)},
                 {"nx", nx},
                 {"ny", ny},
                 {"window", window_json(window)},
                 {"unclipped", unclipped},
                 {"layout", "row-major, row 0 at wsd_lo"},
                 {"encoding", encoding},
                 {"min", std::isfinite(lo) ? json(lo) : json(nullptr)},
                 {"max", std::isfinite(hi) ? json(hi) : json(nullptr)}};
        if (encoding == "base64") {
            out["values"] = float32_base64(fld.values);
            out["mask"] = httplib::detail::base64_encode(std::string(fld.mask.begin(), fld.mask.end()));
        } else {
            out["values"] = fld.values;
            out["mask"] = fld.mask;
        }
        return respond(200, out);
    });
}

ServiceResponse ServiceCore::epsilon_limit(const std::string& id, const std::string& kind) {
    return guarded([&] {
        const auto s = find(id);
        if (kind.empty()) throw BadRequest("query parameter 'kind' is required");
        const AggregationKind k = parse_kind(kind);
        const auto limit = wmsd::epsilon_limit(k, s->config.weights);
        return respond(200, {{"kind", kind}, {"limit", limit ? json(*limit) : json(nullptr)}, {"unbounded", !limit}});
    });
}

ServiceResponse ServiceCore::check_property(const std::string& id, std::string_view body) {
    return guarded([&] {
        const auto s = find(id);
        const json req = parse_body(body);
        const AnySpec spec = body_spec(req, s->config);
        const auto* agg = std::get_if<AggregationSpec>(&spec);
        if (agg == nullptr) throw InvalidArgument("the property check applies to scalar aggregations only");
        const std::size_t resolution = body_size(req, "resolution", 256, 32, kMaxFieldResolution);
        const PropertyReport report = check_minmax_property(*agg, s->config.weights, resolution);
        json argmin = json::array();
        for (const auto& p : report.argmin) argmin.push_back(point_json(p));
        json argmax = json::array();
        for (const auto& p : report.argmax) argmax.push_back(point_json(p));
        return respond(200, {{"spec", spec_to_json(spec)},
                             {"label", spec_label(spec)},
                             {"satisfied", report.satisfied},
                             {"min", report.min},
                             {"max", report.max},
                             {"argmin", argmin},
                             {"argmax", argmax},
                             {"evaluated", report.evaluated},
                             {"resolution", resolution}});
    });
}

}  // namespace wmsd
