#include "shapgraph/adapter.hpp"

#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include <json.hpp>

#include "shapgraph/errors.hpp"

namespace shapgraph {

namespace {

[[noreturn]] void protocol_error(const std::string& what) {
    throw AdapterProtocolError("model adapter: " + what);
}

}  // namespace

AdapterPredictor::AdapterPredictor(const std::string& command) : command_(command) {
    int in_pipe[2];   // parent -> child
    int out_pipe[2];  // child -> parent
    if (pipe(in_pipe) != 0 || pipe(out_pipe) != 0)
        protocol_error("pipe failed: " + std::string(std::strerror(errno)));

    pid_ = fork();
    if (pid_ < 0) protocol_error("fork failed: " + std::string(std::strerror(errno)));
    if (pid_ == 0) {
        dup2(in_pipe[0], STDIN_FILENO);
        dup2(out_pipe[1], STDOUT_FILENO);
        close(in_pipe[0]);
        close(in_pipe[1]);
        close(out_pipe[0]);
        close(out_pipe[1]);
        execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
        _exit(127);
    }
    close(in_pipe[0]);
    close(out_pipe[1]);
    to_child_ = in_pipe[1];
    from_child_ = out_pipe[0];
    signal(SIGPIPE, SIG_IGN);

    nlohmann::json meta;
    try {
        meta = nlohmann::json::parse(roundtrip(R"({"cmd":"meta"})"));
    } catch (const nlohmann::json::exception& e) {
        protocol_error("malformed meta reply: " + std::string(e.what()));
    }
    if (meta.contains("error")) protocol_error(meta["error"].dump());
    if (!meta.contains("d") || !meta.contains("classes"))
        protocol_error("meta reply missing d/classes");
    d_ = meta["d"].get<int>();
    classes_ = meta["classes"].get<int>();
    if (d_ < 1 || classes_ < 2) protocol_error("meta reply with invalid dimensions");
}

AdapterPredictor::~AdapterPredictor() {
    if (to_child_ >= 0) close(to_child_);
    if (from_child_ >= 0) close(from_child_);
    if (pid_ > 0) {
        int status = 0;
        if (waitpid(pid_, &status, WNOHANG) == 0) {
            kill(pid_, SIGTERM);
            waitpid(pid_, &status, 0);
        }
    }
}

std::string AdapterPredictor::roundtrip(const std::string& request) const {
    std::string line = request;
    line.push_back('\n');
    std::size_t sent = 0;
    while (sent < line.size()) {
        ssize_t n = write(to_child_, line.data() + sent, line.size() - sent);
        if (n <= 0) protocol_error("adapter process closed its input (dead?)");
        sent += static_cast<std::size_t>(n);
    }
    for (;;) {
        auto nl = read_buffer_.find('\n');
        if (nl != std::string::npos) {
            std::string reply = read_buffer_.substr(0, nl);
            read_buffer_.erase(0, nl + 1);
            return reply;
        }
        char chunk[4096];
        ssize_t n = read(from_child_, chunk, sizeof(chunk));
        if (n <= 0) protocol_error("adapter process closed its output (dead?)");
        read_buffer_.append(chunk, static_cast<std::size_t>(n));
    }
}

ProbMatrix AdapterPredictor::predict(const Batch& batch) const {
    std::lock_guard<std::mutex> lock(io_mutex_);
    nlohmann::json req;
    req["cmd"] = "predict";
    req["instances"] = batch;

    nlohmann::json reply;
    try {
        reply = nlohmann::json::parse(roundtrip(req.dump()));
    } catch (const nlohmann::json::exception& e) {
        protocol_error("malformed predict reply: " + std::string(e.what()));
    }
    if (reply.contains("error")) protocol_error(reply["error"].dump());
    if (!reply.contains("probs")) protocol_error("predict reply missing probs");
    try {
        return reply["probs"].get<ProbMatrix>();
    } catch (const nlohmann::json::exception& e) {
        protocol_error("predict reply not a matrix: " + std::string(e.what()));
    }
}

std::shared_ptr<AdapterPredictor> connect_adapter(const std::string& command) {
    return std::make_shared<AdapterPredictor>(command);
}

}  // namespace shapgraph
