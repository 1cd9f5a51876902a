#pragma once

// Session-based JSON facade over the engine. ServiceCore is transport-agnostic; the HTTP
// routes in service_http.hpp forward to it.

#include <cstddef>
#include <cstdint>
#include <list>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <string_view>
#include <unordered_map>

#include "wmsd/config.hpp"
#include "wmsd/geometry.hpp"
#include "wmsd/pipeline.hpp"

namespace wmsd {

struct ServiceResponse {
    int status = 200;
    std::string body;
};

/// Immutable snapshot of an uploaded dataset and everything derived from it.
struct Session {
    std::string id;
    DecisionMatrix dataset;
    ProjectConfig config;
    Analysis analysis;
    SpaceModel model;
};

inline constexpr std::size_t kDefaultSessionCapacity = 64;
inline constexpr std::size_t kMaxFieldResolution = 1024;
inline constexpr std::size_t kDefaultFieldResolution = 256;

class ServiceCore {
public:
    explicit ServiceCore(std::size_t capacity = kDefaultSessionCapacity, std::uint64_t seed = std::random_device{}());

    ServiceResponse create_session(std::string_view csv, std::string_view config_json);
    /// Atomically swaps the session contents; readers see either the old or the new snapshot.
    ServiceResponse replace_session(const std::string& id, std::string_view csv, std::string_view config_json);
    ServiceResponse wmsd(const std::string& id);
    ServiceResponse boundary(const std::string& id);
    ServiceResponse rank(const std::string& id, std::string_view body);
    ServiceResponse field(const std::string& id, std::string_view body);
    ServiceResponse epsilon_limit(const std::string& id, const std::string& kind);
    ServiceResponse check_property(const std::string& id, std::string_view body);

    std::size_t size() const;
    std::size_t capacity() const noexcept { return capacity_; }

private:
    std::shared_ptr<const Session> find(const std::string& id);
    void store(std::shared_ptr<const Session> session);
    std::string next_id();

    std::size_t capacity_;
    mutable std::mutex mutex_;
    std::mt19937_64 rng_;
    std::list<std::string> lru_;
    struct Slot {
        std::shared_ptr<const Session> session;
        std::list<std::string>::iterator position;
    };
    std::unordered_map<std::string, Slot> sessions_;
};

}  // namespace wmsd
