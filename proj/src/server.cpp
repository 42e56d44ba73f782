#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cstring>
#include <iostream>

#include "cartprl/session.hpp"

namespace cartprl {

void serve_connection(int fd, SessionManager& mgr) {
  FrameReader reader;
  char buf[4096];
  while (true) {
    ssize_t n = ::read(fd, buf, sizeof buf);
    if (n <= 0) return;
    reader.feed(buf, static_cast<std::size_t>(n));
    while (auto payload = reader.next()) {
      Json response;
      Json request = Json::parse(*payload, nullptr, /*allow_exceptions=*/false);
      if (request.is_discarded()) {
        response = Json{{"ok", false},
                        {"error", {{"code", "BadRequest"},
                                   {"message", "payload is not valid JSON"}}},
                        {"version", 0}};
      } else {
        response = mgr.handle_request(request);
      }
      std::string frame = encode_frame(response.dump());
      const char* p = frame.data();
      std::size_t left = frame.size();
      while (left > 0) {
        ssize_t w = ::write(fd, p, left);
        if (w <= 0) return;
        p += w;
        left -= static_cast<std::size_t>(w);
      }
    }
  }
}

int serve(int port) {
  int sock = ::socket(AF_INET, SOCK_STREAM, 0);
  if (sock < 0) {
    std::cerr << "cartprl serve: cannot open socket\n";
    return 1;
  }
  int one = 1;
  ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);

  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(static_cast<uint16_t>(port));
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);  // local-only service
  if (::bind(sock, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0) {
    std::cerr << "cartprl serve: cannot bind 127.0.0.1:" << port << "\n";
    ::close(sock);
    return 1;
  }
  if (::listen(sock, 4) < 0) {
    std::cerr << "cartprl serve: listen failed\n";
    ::close(sock);
    return 1;
  }
  std::cerr << "cartprl serve: listening on 127.0.0.1:" << port << "\n";

  SessionManager mgr;
  while (true) {
    int fd = ::accept(sock, nullptr, nullptr);
    if (fd < 0) continue;
    serve_connection(fd, mgr);
    ::close(fd);
  }
}

}  // namespace cartprl
