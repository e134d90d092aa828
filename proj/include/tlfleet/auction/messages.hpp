#pragma once

#include "tlfleet/types.hpp"

#include <deque>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace tlfleet::auction {

struct Bid {
  VehicleId vehicle = 0;
  RequestId request = 0;
  double value = 0.0;
  unsigned round = 0;
};

/// Payload by kind: PreferredRequest -> optional request id (nullopt = abstain),
/// UtilityHistory -> U_v, Bid -> Bid.
struct AuctionMessage {
  enum class Kind { PreferredRequest, UtilityHistory, Bid };

  Kind kind;
  VehicleId sender;
  unsigned round;
  std::variant<std::optional<RequestId>, double, Bid> payload;

  static AuctionMessage preferred(VehicleId sender, unsigned round, std::optional<RequestId> r);
  static AuctionMessage history(VehicleId sender, unsigned round, double utility);
  static AuctionMessage bid(VehicleId sender, const Bid &b);

  std::optional<RequestId> preferred_request() const;
  double utility() const;
  const Bid &bid_payload() const;
};

class ProtocolError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Lossless bus with per-sender FIFO delivery. `recv` takes the oldest
/// undelivered message from one specific sender; every broadcast is logged.
class MessageBus {
public:
  explicit MessageBus(std::vector<VehicleId> members);

  void broadcast(const AuctionMessage &msg, std::span<const VehicleId> recipients);

  /// Throws ProtocolError when nothing from `sender` is waiting, which under
  /// the phased scheduler means the protocol would block forever.
  AuctionMessage recv(VehicleId receiver, VehicleId sender);

  std::size_t pending() const;

  struct TraceEntry {
    AuctionMessage message;
    std::vector<VehicleId> recipients;
  };
  const std::vector<TraceEntry> &trace() const { return trace_; }

  /// One JSON object per line: round, kind, sender, recipients, payload.
  std::string trace_jsonl() const;

private:
  std::map<VehicleId, std::map<VehicleId, std::deque<AuctionMessage>>> inbox_;
  std::vector<TraceEntry> trace_;
};

} // namespace tlfleet::auction
