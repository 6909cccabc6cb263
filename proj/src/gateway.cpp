#include "shsim/gateway.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>

#include "httplib.h"
#include "json.hpp"

namespace shsim::gw {

using nlohmann::json;

std::string to_string(ErrorKind k) {
    switch (k) {
    case ErrorKind::auth: return "auth";
    case ErrorKind::timeout: return "timeout";
    case ErrorKind::transport: return "transport";
    case ErrorKind::rate_limited: return "rate_limited";
    case ErrorKind::server: return "server";
    case ErrorKind::malformed_response: return "malformed_response";
    }
    return "?";
}

bool retryable(ErrorKind k) {
    switch (k) {
    case ErrorKind::timeout:
    case ErrorKind::transport:
    case ErrorKind::rate_limited:
    case ErrorKind::server:
    case ErrorKind::malformed_response:
        return true;
    case ErrorKind::auth:
        return false;
    }
    return false;
}

Result<Completion> HttpTransport::send(const ModelEndpoint& endpoint,
                                       const std::vector<Message>& messages,
                                       const GenerationParams& params) {
    // Split base_url into origin and path prefix.
    std::string origin = endpoint.base_url;
    std::string prefix;
    auto scheme_end = origin.find("://");
    auto path_start = origin.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
    if (path_start != std::string::npos) {
        prefix = origin.substr(path_start);
        origin = origin.substr(0, path_start);
        while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
    }

    httplib::Client client(origin);
    client.set_connection_timeout(endpoint.timeout_ms / 1000, (endpoint.timeout_ms % 1000) * 1000);
    client.set_read_timeout(endpoint.timeout_ms / 1000, (endpoint.timeout_ms % 1000) * 1000);

    httplib::Headers headers;
    if (!endpoint.credential_env.empty()) {
        if (const char* key = std::getenv(endpoint.credential_env.c_str()))
            headers.emplace("Authorization", std::string("Bearer ") + key);
    }

    json body;
    body["model"] = endpoint.model_id;
    body["temperature"] = params.temperature;
    body["max_tokens"] = params.max_tokens;
    body["messages"] = json::array();
    for (const auto& m : messages)
        body["messages"].push_back({{"role", m.role}, {"content", m.content}});

    auto res = client.Post(prefix + "/chat/completions", headers, body.dump(),
                           "application/json");
    if (!res) {
        auto err = res.error();
        if (err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read)
            return Error{ErrorKind::timeout, httplib::to_string(err)};
        return Error{ErrorKind::transport, httplib::to_string(err)};
    }
    if (res->status == 401 || res->status == 403)
        return Error{ErrorKind::auth, "authentication failed (" + std::to_string(res->status) + ")"};
    if (res->status == 429)
        return Error{ErrorKind::rate_limited, "rate limited (429)"};
    if (res->status >= 500)
        return Error{ErrorKind::server, "server error (" + std::to_string(res->status) + ")"};
    if (res->status != 200)
        return Error{ErrorKind::transport, "unexpected status " + std::to_string(res->status)};

    json doc = json::parse(res->body, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded() || !doc.contains("choices") || !doc["choices"].is_array() ||
        doc["choices"].empty() || !doc["choices"][0].contains("message") ||
        !doc["choices"][0]["message"].contains("content"))
        return Error{ErrorKind::malformed_response, "body is not a chat completion"};

    Completion out;
    out.text = doc["choices"][0]["message"]["content"].get<std::string>();
    if (doc.contains("usage") && doc["usage"].is_object()) {
        const auto& u = doc["usage"];
        if (u.contains("prompt_tokens") && u["prompt_tokens"].is_number())
            out.prompt_tokens = u["prompt_tokens"].get<int>();
        if (u.contains("completion_tokens") && u["completion_tokens"].is_number())
            out.completion_tokens = u["completion_tokens"].get<int>();
    }
    return out;
}

Gateway::Gateway(std::shared_ptr<Transport> transport, RetryPolicy policy,
                 std::uint64_t jitter_seed)
    : transport_(std::move(transport)),
      policy_(policy),
      sleeper_([](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); }),
      jitter_rng_(jitter_seed) {}

void Gateway::set_rate_limit(double requests_per_second) {
    std::lock_guard lock(mutex_);
    min_interval_ms_ = requests_per_second > 0 ? 1000.0 / requests_per_second : 0.0;
}

void Gateway::set_sleeper(std::function<void(std::chrono::milliseconds)> sleeper) {
    sleeper_ = std::move(sleeper);
}

std::chrono::milliseconds Gateway::backoff_delay(int attempt) {
    double base = static_cast<double>(policy_.base_delay.count());
    for (int i = 1; i < attempt; ++i) base *= policy_.factor;
    double jitter;
    {
        std::lock_guard lock(mutex_);
        jitter = (static_cast<double>(bounded(jitter_rng_, 2001)) - 1000.0) / 1000.0;
    }
    base *= 1.0 + policy_.jitter * jitter;
    return std::chrono::milliseconds(static_cast<long long>(base));
}

void Gateway::rate_limit_acquire() {
    std::chrono::milliseconds wait{0};
    {
        std::lock_guard lock(mutex_);
        if (min_interval_ms_ <= 0) return;
        auto now = std::chrono::steady_clock::now();
        auto slot = next_slot_ < now ? now : next_slot_;
        next_slot_ = slot + std::chrono::milliseconds(static_cast<long long>(min_interval_ms_));
        wait = std::chrono::duration_cast<std::chrono::milliseconds>(slot - now);
    }
    if (wait.count() > 0) sleeper_(wait);
}

Result<std::string> Gateway::complete(const ModelEndpoint& endpoint,
                                      const std::vector<Message>& messages,
                                      const GenerationParams& params) {
    if (messages.empty())
        return Error{ErrorKind::malformed_response, "request has no messages"};

    UsageEntry entry;
    entry.endpoint_name = endpoint.name;
    entry.model_id = endpoint.model_id;
    auto start = std::chrono::steady_clock::now();

    Error last{ErrorKind::transport, "not attempted"};
    for (int attempt = 1; attempt <= policy_.max_attempts; ++attempt) {
        rate_limit_acquire();
        entry.attempts = attempt;
        auto result = transport_->send(endpoint, messages, params);
        if (result.ok()) {
            entry.latency_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                   std::chrono::steady_clock::now() - start)
                                   .count();
            entry.prompt_tokens = result.value().prompt_tokens;
            entry.completion_tokens = result.value().completion_tokens;
            entry.outcome = "ok";
            std::lock_guard lock(mutex_);
            usage_.push_back(entry);
            return result.value().text;
        }
        last = result.error();
        if (!retryable(last.kind) || attempt == policy_.max_attempts) break;
        sleeper_(backoff_delay(attempt));
    }

    entry.latency_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
    entry.outcome = to_string(last.kind);
    {
        std::lock_guard lock(mutex_);
        usage_.push_back(entry);
    }
    return last;
}

std::vector<Result<std::string>> Gateway::complete_parallel(
    const std::vector<CompletionRequest>& batch, int max_in_flight) {
    if (max_in_flight < 1) max_in_flight = 1;
    std::vector<Result<std::string>> results(
        batch.size(), Result<std::string>(Error{ErrorKind::transport, "not attempted"}));
    if (batch.empty()) return results;

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= batch.size()) return;
            results[i] = complete(batch[i].endpoint, batch[i].messages, batch[i].params);
        }
    };

    std::vector<std::thread> pool;
    int n_workers = std::min<std::size_t>(max_in_flight, batch.size());
    pool.reserve(n_workers);
    for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return results;
}

std::vector<UsageEntry> Gateway::usage() const {
    std::lock_guard lock(mutex_);
    return usage_;
}

} // namespace shsim::gw
