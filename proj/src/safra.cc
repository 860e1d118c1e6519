#include "unidet/safra.hh"

#include <cctype>
#include <charconv>
#include <functional>

#include "unidet/error.hh"

namespace unidet {

namespace {

void check_node(const SafraNode& node, std::vector<bool>& seen_rank,
                StateSet& seen_states, std::size_t& count) {
  if (node.label.empty()) throw InvariantError("Safra tree node with empty label");
  if (seen_states.intersects(node.label))
    throw InvariantError("Safra tree labels are not disjoint");
  seen_states.insert_all(node.label);
  if (node.rank >= seen_rank.size()) seen_rank.resize(node.rank + 1, false);
  if (node.rank == 0 || seen_rank[node.rank])
    throw InvariantError("Safra tree rank " + std::to_string(node.rank) +
                         " repeated or zero");
  seen_rank[node.rank] = true;
  ++count;
  Rank prev_sibling = 0;
  for (const auto& child : node.children) {
    if (child.rank <= node.rank)
      throw InvariantError("child rank must exceed parent rank");
    if (child.rank <= prev_sibling)
      throw InvariantError("right sibling rank must exceed left sibling rank");
    prev_sibling = child.rank;
    check_node(child, seen_rank, seen_states, count);
  }
}

}  // namespace

RankedSafraTree RankedSafraTree::from(SafraNode root) {
  std::vector<bool> seen_rank;
  StateSet seen_states;
  std::size_t count = 0;
  check_node(root, seen_rank, seen_states, count);
  if (root.rank != 1) throw InvariantError("Safra tree root must have rank 1");
  for (std::size_t r = 1; r <= count; ++r)
    if (r >= seen_rank.size() || !seen_rank[r])
      throw InvariantError("Safra tree ranks are not 1.." + std::to_string(count));
  RankedSafraTree t;
  t.root_ = std::move(root);
  t.size_ = count;
  return t;
}

TreeShape unflatten(std::span<const Rank> ranks) {
  const std::size_t n = ranks.size();
  TreeShape shape;
  shape.parent.assign(n, std::nullopt);
  shape.left_boundary.assign(n, 0);
  std::vector<std::size_t> stack;
  stack.reserve(n);
  for (std::size_t i = n; i >= 1; --i) {
    ++shape.main_iterations;
    while (!stack.empty() && ranks[i - 1] < ranks[stack.back() - 1]) {
      shape.left_boundary[stack.back() - 1] = i;
      stack.pop_back();
      ++shape.pops;
    }
    if (!stack.empty()) shape.parent[i - 1] = stack.back();
    stack.push_back(i);
    ++shape.pushes;
  }
  while (!stack.empty()) {
    shape.left_boundary[stack.back() - 1] = 0;
    stack.pop_back();
    ++shape.pops;
  }
  return shape;
}

RankedSlice safra_to_slice(const RankedSafraTree& tree) {
  PreSlice out;
  out.entries.reserve(tree.size());
  std::function<void(const SafraNode&)> visit = [&](const SafraNode& node) {
    for (const auto& child : node.children) visit(child);
    out.entries.push_back({node.label, node.rank});
  };
  visit(tree.root());
  return RankedSlice::from(std::move(out));
}

RankedSafraTree slice_to_safra(const RankedSlice& slice) {
  if (slice.is_sink()) throw InvariantError("the sink slice has no Safra tree");
  const auto ranks = slice.ranks();
  const TreeShape shape = unflatten(ranks);
  const std::size_t n = slice.size();
  std::vector<std::vector<std::size_t>> children(n + 1);
  for (std::size_t i = 1; i <= n; ++i)
    if (auto p = shape.parent[i - 1]) children[*p].push_back(i);
  std::function<SafraNode(std::size_t)> build = [&](std::size_t i) {
    SafraNode node{slice.at(i).states, slice.at(i).rank, {}};
    node.children.reserve(children[i].size());
    for (std::size_t c : children[i]) node.children.push_back(build(c));
    return node;
  };
  return RankedSafraTree::from(build(n));
}

std::string render_tree(const RankedSafraTree& tree) {
  std::string out;
  std::function<void(const SafraNode&)> visit = [&](const SafraNode& node) {
    out += node.label.to_string();
    out += ':';
    out += std::to_string(node.rank);
    if (node.children.empty()) return;
    out += '(';
    for (std::size_t i = 0; i < node.children.size(); ++i) {
      if (i) out += ',';
      visit(node.children[i]);
    }
    out += ')';
  };
  visit(tree.root());
  return out;
}

namespace {

class TreeParser {
 public:
  explicit TreeParser(std::string_view text) : text_(text) {}

  SafraNode parse() {
    SafraNode root = node();
    if (peek() != '\0') fail("trailing characters");
    return root;
  }

 private:
  SafraNode node() {
    SafraNode n;
    expect('{');
    std::vector<StateId> ids;
    if (peek() == '}') {
      ++pos_;
    } else {
      while (true) {
        ids.push_back(static_cast<StateId>(number()));
        char c = next();
        if (c == '}') break;
        if (c != ',') fail("expected ',' or '}'");
      }
    }
    n.label = StateSet::from_unsorted(std::move(ids));
    expect(':');
    n.rank = static_cast<Rank>(number());
    if (peek() == '(') {
      ++pos_;
      while (true) {
        n.children.push_back(node());
        char c = next();
        if (c == ')') break;
        if (c != ',') fail("expected ',' or ')'");
      }
    }
    return n;
  }

  std::uint64_t number() {
    skip_ws();
    std::uint64_t v = 0;
    auto first = text_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, text_.data() + text_.size(), v);
    if (ec != std::errc{} || ptr == first || v > 0xffffffffu) fail("expected a number");
    pos_ += static_cast<std::size_t>(ptr - first);
    return v;
  }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  char next() {
    char c = peek();
    if (c != '\0') ++pos_;
    return c;
  }
  void expect(char c) {
    if (next() != c) fail(std::string("expected '") + c + "'");
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(1, "tree syntax at offset " + std::to_string(pos_) + ": " + what);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

RankedSafraTree parse_tree(std::string_view text) {
  return RankedSafraTree::from(TreeParser(text).parse());
}

}  // namespace unidet
