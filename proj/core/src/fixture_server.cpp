#include "segcrawl/fixture_server.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "httplib.h"
#include "segcrawl/errors.hpp"

namespace segcrawl {

FixtureCorpus load_fixture_directory(const std::filesystem::path& dir) {
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec)) {
        throw StartupError("fixture directory not found: " + dir.string());
    }
    FixtureCorpus corpus;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        std::ifstream in(entry.path(), std::ios::binary);
        std::stringstream buffer;
        buffer << in.rdbuf();
        FixturePage page;
        page.body = buffer.str();
        corpus.pages.emplace("/" + entry.path().filename().string(), std::move(page));
    }
    return corpus;
}

struct FixtureServer::Impl {
    FixtureCorpus corpus;
    httplib::Server server;
    std::thread listener;
    std::uint16_t port = 0;
    std::atomic<std::size_t> served{0};

    std::mutex mutex;
    std::condition_variable stopping_cv;
    bool stopping = false;
    bool stopped = false;

    void handle(const httplib::Request& request, httplib::Response& response) {
        ++served;
        const auto it = corpus.pages.find(request.path);
        if (it == corpus.pages.end()) {
            response.status = 404;
            response.set_content("not found", "text/plain");
            return;
        }
        const FixturePage& page = it->second;
        if (page.delay.count() > 0) {
            std::unique_lock lock(mutex);
            if (stopping_cv.wait_for(lock, page.delay, [&] { return stopping; })) {
                response.status = 503;
                return;
            }
        }
        response.status = page.status;
        for (const auto& [name, value] : page.headers) response.set_header(name, value);
        response.set_content(page.body, page.content_type);
    }
};

FixtureServer::FixtureServer(FixtureCorpus corpus) : impl_(std::make_unique<Impl>()) {
    impl_->corpus = std::move(corpus);
    const std::size_t workers = std::max<std::size_t>(impl_->corpus.worker_threads, 1);
    impl_->server.new_task_queue = [workers] { return new httplib::ThreadPool(workers); };
    impl_->server.Get(".*", [impl = impl_.get()](const httplib::Request& req, httplib::Response& res) {
        impl->handle(req, res);
    });
    // SO_REUSEADDR only, no SO_REUSEPORT
    impl_->server.set_socket_options([](socket_t sock) {
        int yes = 1;
        ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const char*>(&yes), sizeof(yes));
    });

    const auto& host = impl_->corpus.host;
    if (impl_->corpus.port == 0) {
        const int port = impl_->server.bind_to_any_port(host);
        if (port <= 0) throw StartupError("fixture server: cannot bind " + host);
        impl_->port = static_cast<std::uint16_t>(port);
    } else {
        if (!impl_->server.bind_to_port(host, impl_->corpus.port)) {
            throw StartupError("fixture server: cannot bind " + host + ":" +
                               std::to_string(impl_->corpus.port));
        }
        impl_->port = impl_->corpus.port;
    }
    impl_->listener = std::thread([impl = impl_.get()] { impl->server.listen_after_bind(); });
    impl_->server.wait_until_ready();
}

FixtureServer::~FixtureServer() { shutdown(); }

const std::string& FixtureServer::host() const noexcept { return impl_->corpus.host; }

std::uint16_t FixtureServer::port() const noexcept { return impl_->port; }

std::string FixtureServer::base_url() const {
    return "http://" + impl_->corpus.host + ":" + std::to_string(impl_->port);
}

std::string FixtureServer::url_for(std::string_view path) const {
    std::string out = base_url();
    if (path.empty() || path.front() != '/') out += '/';
    out += path;
    return out;
}

std::size_t FixtureServer::requests_served() const noexcept { return impl_->served.load(); }

void FixtureServer::shutdown() {
    {
        std::lock_guard lock(impl_->mutex);
        if (impl_->stopped) return;
        impl_->stopped = true;
        impl_->stopping = true;
    }
    impl_->stopping_cv.notify_all();
    impl_->server.stop();
    if (impl_->listener.joinable()) impl_->listener.join();
}

}  // namespace segcrawl
