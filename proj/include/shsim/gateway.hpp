#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "shsim/rng.hpp"

namespace shsim::gw {

struct Message {
    std::string role; // system / user / assistant
    std::string content;

    bool operator==(const Message&) const = default;
};

struct ModelEndpoint {
    std::string name;           // handle used in configs and records
    std::string base_url;       // e.g. https://host:8000/v1
    std::string model_id;
    std::string credential_env; // env var holding the API key; value never persisted
    int timeout_ms = 120000;
};

struct GenerationParams {
    double temperature = 0.6; // gameplay default; annotation uses 0.0
    int max_tokens = 1000;
};

enum class ErrorKind {
    auth,               // non-retryable
    timeout,
    transport,
    rate_limited,
    server,
    malformed_response,
};

std::string to_string(ErrorKind k);
bool retryable(ErrorKind k);

struct Error {
    ErrorKind kind = ErrorKind::transport;
    std::string message;
};

template <typename T>
class Result {
  public:
    Result(T value) : value_(std::move(value)) {}
    Result(Error error) : value_(std::move(error)) {}

    bool ok() const { return std::holds_alternative<T>(value_); }
    const T& value() const { return std::get<T>(value_); }
    T& value() { return std::get<T>(value_); }
    const Error& error() const { return std::get<Error>(value_); }

  private:
    std::variant<T, Error> value_;
};

struct Completion {
    std::string text;
    std::optional<int> prompt_tokens;
    std::optional<int> completion_tokens;
};

// One wire-level attempt. Implementations: HttpTransport for real
// OpenAI-compatible endpoints, scripted mocks in tests.
class Transport {
  public:
    virtual ~Transport() = default;
    virtual Result<Completion> send(const ModelEndpoint& endpoint,
                                    const std::vector<Message>& messages,
                                    const GenerationParams& params) = 0;
};

class HttpTransport : public Transport {
  public:
    Result<Completion> send(const ModelEndpoint& endpoint, const std::vector<Message>& messages,
                            const GenerationParams& params) override;
};

struct RetryPolicy {
    int max_attempts = 5;
    std::chrono::milliseconds base_delay{500};
    double factor = 2.0;
    double jitter = 0.2; // +-20%
};

struct UsageEntry {
    std::string endpoint_name;
    std::string model_id;
    int attempts = 0;
    long long latency_ms = 0;
    std::optional<int> prompt_tokens;
    std::optional<int> completion_tokens;
    std::string outcome; // "ok" or the error kind
};

struct CompletionRequest {
    ModelEndpoint endpoint;
    std::vector<Message> messages;
    GenerationParams params;
};

// Retrying, rate-limited front end over a Transport. Safe for concurrent use;
// the rate limiter and usage log are shared across callers.
class Gateway {
  public:
    explicit Gateway(std::shared_ptr<Transport> transport, RetryPolicy policy = {},
                     std::uint64_t jitter_seed = 0);

    // requests_per_second <= 0 disables limiting.
    void set_rate_limit(double requests_per_second);
    // Injection point for tests; defaults to a real sleep.
    void set_sleeper(std::function<void(std::chrono::milliseconds)> sleeper);

    Result<std::string> complete(const ModelEndpoint& endpoint,
                                 const std::vector<Message>& messages,
                                 const GenerationParams& params);

    // Runs the batch with at most max_in_flight requests outstanding. Results
    // are positioned by request index; one failure leaves siblings untouched.
    std::vector<Result<std::string>> complete_parallel(
        const std::vector<CompletionRequest>& batch, int max_in_flight);

    std::vector<UsageEntry> usage() const;

  private:
    std::chrono::milliseconds backoff_delay(int attempt);
    void rate_limit_acquire();

    std::shared_ptr<Transport> transport_;
    RetryPolicy policy_;
    std::function<void(std::chrono::milliseconds)> sleeper_;

    mutable std::mutex mutex_; // guards jitter rng, limiter state, usage log
    Rng jitter_rng_;
    double min_interval_ms_ = 0.0;
    std::chrono::steady_clock::time_point next_slot_{};
    std::vector<UsageEntry> usage_;
};

} // namespace shsim::gw
