#include "tlfleet/auction/messages.hpp"

#include <json.hpp>

namespace tlfleet::auction {

AuctionMessage AuctionMessage::preferred(VehicleId sender, unsigned round,
                                         std::optional<RequestId> r) {
  return {Kind::PreferredRequest, sender, round, r};
}

AuctionMessage AuctionMessage::history(VehicleId sender, unsigned round, double utility) {
  return {Kind::UtilityHistory, sender, round, utility};
}

AuctionMessage AuctionMessage::bid(VehicleId sender, const Bid &b) {
  return {Kind::Bid, sender, b.round, b};
}

std::optional<RequestId> AuctionMessage::preferred_request() const {
  if (kind != Kind::PreferredRequest)
    throw ProtocolError("expected a preferred-request message");
  return std::get<std::optional<RequestId>>(payload);
}

double AuctionMessage::utility() const {
  if (kind != Kind::UtilityHistory)
    throw ProtocolError("expected a utility-history message");
  return std::get<double>(payload);
}

const Bid &AuctionMessage::bid_payload() const {
  if (kind != Kind::Bid)
    throw ProtocolError("expected a bid message");
  return std::get<Bid>(payload);
}

MessageBus::MessageBus(std::vector<VehicleId> members) {
  for (VehicleId v : members)
    inbox_[v];
}

void MessageBus::broadcast(const AuctionMessage &msg, std::span<const VehicleId> recipients) {
  TraceEntry entry{msg, {}};
  for (VehicleId to : recipients) {
    if (to == msg.sender)
      continue;
    auto it = inbox_.find(to);
    if (it == inbox_.end())
      throw ProtocolError("broadcast to unknown vehicle " + std::to_string(to));
    it->second[msg.sender].push_back(msg);
    entry.recipients.push_back(to);
  }
  trace_.push_back(std::move(entry));
}

AuctionMessage MessageBus::recv(VehicleId receiver, VehicleId sender) {
  auto it = inbox_.find(receiver);
  if (it == inbox_.end())
    throw ProtocolError("receive by unknown vehicle " + std::to_string(receiver));
  auto &queue = it->second[sender];
  if (queue.empty())
    throw ProtocolError("vehicle " + std::to_string(receiver) + " waits on vehicle " +
                        std::to_string(sender) + " but nothing was sent");
  AuctionMessage msg = std::move(queue.front());
  queue.pop_front();
  return msg;
}

std::size_t MessageBus::pending() const {
  std::size_t n = 0;
  for (const auto &[receiver, by_sender] : inbox_)
    for (const auto &[sender, queue] : by_sender)
      n += queue.size();
  return n;
}

std::string MessageBus::trace_jsonl() const {
  std::string out;
  for (const auto &e : trace_) {
    nlohmann::json j;
    j["round"] = e.message.round;
    j["sender"] = e.message.sender;
    j["recipients"] = e.recipients;
    switch (e.message.kind) {
    case AuctionMessage::Kind::PreferredRequest: {
      j["kind"] = "preferred-request";
      const auto r = e.message.preferred_request();
      j["request"] = r ? nlohmann::json(*r) : nlohmann::json(nullptr);
      break;
    }
    case AuctionMessage::Kind::UtilityHistory:
      j["kind"] = "utility-history";
      j["utility"] = e.message.utility();
      break;
    case AuctionMessage::Kind::Bid:
      j["kind"] = "bid";
      j["request"] = e.message.bid_payload().request;
      j["value"] = e.message.bid_payload().value;
      break;
    }
    out += j.dump();
    out += '\n';
  }
  return out;
}

} // namespace tlfleet::auction
