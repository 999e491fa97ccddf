#include "ted/tree.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <limits>
#include <unordered_map>
#include <utility>

namespace ted {

namespace {

constexpr std::size_t kNpos = std::numeric_limits<std::size_t>::max();
constexpr std::uint32_t kNoPost = std::numeric_limits<std::uint32_t>::max();

bool is_space_byte(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

bool is_reserved(char c) {
    return c == '(' || c == ')' || c == ',' || c == '"';
}

bool needs_quoting(std::string_view label) {
    for (char c : label)
        if (is_reserved(c) || is_space_byte(c)) return true;
    return false;
}

}  // namespace

LabeledTree LabeledTree::parse(std::string_view s, const ParseOptions& opts) {
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < s.size() && is_space_byte(s[i])) ++i;
    };
    auto parse_label = [&]() -> std::string {
        skip_ws();
        if (i >= s.size()) throw ParseError("expected label, found end of input", i);
        if (s[i] == '"') {
            std::size_t start = i++;
            std::string out;
            for (;;) {
                if (i >= s.size()) throw ParseError("unterminated quoted label", start);
                char c = s[i];
                if (c == '"') {
                    if (i + 1 < s.size() && s[i + 1] == '"') {
                        out += '"';
                        i += 2;
                    } else {
                        ++i;
                        break;
                    }
                } else {
                    out += c;
                    ++i;
                }
            }
            if (out.empty()) throw ParseError("empty label", start);
            return out;
        }
        std::size_t begin = i;
        while (i < s.size() && !is_reserved(s[i]) && !is_space_byte(s[i])) ++i;
        if (i == begin) throw ParseError("expected label", begin);
        return std::string(s.substr(begin, i - begin));
    };

    std::vector<std::string> labels;
    std::vector<std::size_t> parents;
    std::vector<std::size_t> open;  // stack of nodes whose child list is open

    labels.push_back(parse_label());
    parents.push_back(kNpos);
    skip_ws();
    if (i < s.size() && s[i] == '(') {
        ++i;
        open.push_back(0);
    }

    while (!open.empty()) {
        labels.push_back(parse_label());
        parents.push_back(open.back());
        std::size_t cur = labels.size() - 1;
        skip_ws();
        if (i < s.size() && s[i] == '(') {
            if (open.size() == opts.max_depth)
                throw ParseError("maximum nesting depth exceeded", i);
            ++i;
            open.push_back(cur);
            continue;
        }
        bool done = false;
        while (!done) {
            skip_ws();
            if (i >= s.size()) throw ParseError("unbalanced '(': expected ',' or ')'", i);
            if (s[i] == ',') {
                ++i;
                done = true;  // next sibling
            } else if (s[i] == ')') {
                ++i;
                open.pop_back();
                if (open.empty()) break;
            } else {
                throw ParseError("expected ',' or ')'", i);
            }
        }
    }

    skip_ws();
    if (i != s.size()) throw ParseError("unexpected trailing input", i);
    return build(std::move(labels), std::move(parents));
}

LabeledTree LabeledTree::from_structure(const std::vector<std::string>& labels,
                                        const std::vector<std::size_t>& parent) {
    if (labels.empty()) throw std::invalid_argument("tree must have at least one node");
    if (labels.size() != parent.size())
        throw std::invalid_argument("labels and parent vectors differ in length");
    if (parent[0] != kNpos) throw std::invalid_argument("node 0 must be the root");
    for (std::size_t i = 1; i < parent.size(); ++i)
        if (parent[i] >= i) throw std::invalid_argument("parent index must precede child");
    for (const auto& l : labels)
        if (l.empty()) throw std::invalid_argument("labels must be non-empty");
    std::vector<std::string> ls = labels;
    std::vector<std::size_t> ps = parent;
    return build(std::move(ls), std::move(ps));
}

LabeledTree LabeledTree::build(std::vector<std::string>&& labels,
                               std::vector<std::size_t>&& parent) {
    const std::size_t n = labels.size();
    std::vector<std::vector<std::uint32_t>> kids(n);
    for (std::size_t i = 1; i < n; ++i) kids[parent[i]].push_back(static_cast<std::uint32_t>(i));

    LabeledTree t;
    t.n_ = static_cast<std::uint32_t>(n);
    t.label_.assign(n + 1, 0);
    t.parent_.assign(n + 1, kNoNode);
    t.child_off_.assign(n + 2, 0);
    t.child_.reserve(n - 1 + 1);

    // Preorder renumbering; input indices may be in any creation order.
    std::vector<NodeId> id_of(n, 0);
    std::vector<std::uint32_t> stack;
    stack.push_back(0);
    NodeId next_id = 0;
    std::unordered_map<std::string_view, std::uint32_t> intern;
    std::vector<NodeId> order;  // new ids in assignment order, for CSR fill
    order.reserve(n);
    while (!stack.empty()) {
        std::uint32_t tmp = stack.back();
        stack.pop_back();
        NodeId id = ++next_id;
        id_of[tmp] = id;
        order.push_back(id);
        auto [it, inserted] = intern.try_emplace(labels[tmp], static_cast<std::uint32_t>(t.label_names_.size()));
        if (inserted) t.label_names_.push_back(labels[tmp]);
        t.label_[id] = it->second;
        if (parent[tmp] != kNpos) t.parent_[id] = id_of[parent[tmp]];
        for (auto rit = kids[tmp].rbegin(); rit != kids[tmp].rend(); ++rit) stack.push_back(*rit);
    }
    // With preorder ids, a node's children are assigned consecutively after it
    // only per-subtree; rebuild child lists in the new numbering.
    {
        std::vector<std::uint32_t> cnt(n + 2, 0);
        for (NodeId v = 1; v <= t.n_; ++v)
            if (t.parent_[v] != kNoNode) ++cnt[t.parent_[v]];
        std::uint32_t off = 0;
        for (NodeId v = 1; v <= t.n_; ++v) {
            t.child_off_[v] = off;
            off += cnt[v];
        }
        t.child_off_[t.n_ + 1] = off;
        t.child_.assign(off, 0);
        std::vector<std::uint32_t> fill(n + 1, 0);
        for (NodeId v = 1; v <= t.n_; ++v) {  // preorder id order == sibling order
            NodeId p = t.parent_[v];
            if (p != kNoNode) t.child_[t.child_off_[p] + fill[p]++] = v;
        }
    }
    t.annotate();
    return t;
}

void LabeledTree::annotate() {
    const std::uint32_t n = n_;
    post_.assign(n + 1, 0);
    node_at_post_.assign(n + 1, 0);
    size_.assign(n + 1, 1);
    depth_.assign(n + 1, 0);
    for (NodeId v = 2; v <= n; ++v) depth_[v] = depth_[parent_[v]] + 1;
    for (NodeId v = n; v >= 2; --v) size_[parent_[v]] += size_[v];

    // One iterative DFS computes postorder ranks and the Euler tour.
    euler_.clear();
    euler_.reserve(2 * n);
    first_.assign(n + 1, 0);
    std::vector<std::pair<NodeId, std::uint32_t>> st;
    st.reserve(64);
    st.emplace_back(1, 0);
    std::uint32_t post_counter = 0;
    while (!st.empty()) {
        auto [v, ci] = st.back();
        if (ci == 0) {
            first_[v] = static_cast<std::uint32_t>(euler_.size());
            euler_.push_back(v);
        }
        std::uint32_t deg = child_off_[v + 1] - child_off_[v];
        if (ci < deg) {
            st.back().second = ci + 1;
            st.emplace_back(child_[child_off_[v] + ci], 0);
        } else {
            post_[v] = ++post_counter;
            node_at_post_[post_counter] = v;
            st.pop_back();
            if (!st.empty()) euler_.push_back(st.back().first);
        }
    }

    // Sparse table over the tour, storing positions of minimum depth.
    const std::size_t m = euler_.size();
    const int levels = std::bit_width(m);
    sparse_.assign(levels, {});
    sparse_[0].resize(m);
    for (std::size_t i = 0; i < m; ++i) sparse_[0][i] = static_cast<std::uint32_t>(i);
    for (int j = 1; j < levels; ++j) {
        std::size_t len = std::size_t{1} << j;
        sparse_[j].resize(m - len + 1);
        for (std::size_t i = 0; i + len <= m; ++i) {
            std::uint32_t a = sparse_[j - 1][i];
            std::uint32_t b = sparse_[j - 1][i + len / 2];
            sparse_[j][i] = depth_[euler_[a]] <= depth_[euler_[b]] ? a : b;
        }
    }

    seg_leaves_ = std::max<std::uint32_t>(1, std::bit_ceil(n));
    seg_min_post_.assign(2 * seg_leaves_, kNoPost);
    seg_max_pre_.assign(2 * seg_leaves_, 0);
    for (std::uint32_t p = 1; p <= n; ++p) seg_min_post_[seg_leaves_ + p - 1] = post_[p];
    for (std::uint32_t q = 1; q <= n; ++q) seg_max_pre_[seg_leaves_ + q - 1] = node_at_post_[q];
    for (std::uint32_t v = seg_leaves_ - 1; v >= 1; --v) {
        seg_min_post_[v] = std::min(seg_min_post_[2 * v], seg_min_post_[2 * v + 1]);
        seg_max_pre_[v] = std::max(seg_max_pre_[2 * v], seg_max_pre_[2 * v + 1]);
    }
}

std::string LabeledTree::serialize() const {
    std::string out;
    out.reserve(n_ * 4);
    auto emit_label = [&](NodeId v) {
        const std::string& name = label_names_[label_[v]];
        if (!needs_quoting(name)) {
            out += name;
            return;
        }
        out += '"';
        for (char c : name) {
            out += c;
            if (c == '"') out += '"';
        }
        out += '"';
    };
    std::vector<std::pair<NodeId, std::uint32_t>> st;
    st.emplace_back(1, 0);
    while (!st.empty()) {
        auto [v, ci] = st.back();
        std::uint32_t deg = child_off_[v + 1] - child_off_[v];
        if (ci == 0) {
            emit_label(v);
            if (deg > 0) out += '(';
        }
        if (ci < deg) {
            if (ci > 0) out += ',';
            st.back().second = ci + 1;
            st.emplace_back(child_[child_off_[v] + ci], 0);
        } else {
            if (deg > 0) out += ')';
            st.pop_back();
        }
    }
    return out;
}

std::vector<std::uint32_t> align_labels(const LabeledTree& base, const LabeledTree& other) {
    std::unordered_map<std::string_view, std::uint32_t> ids;
    ids.reserve(base.label_count());
    for (std::uint32_t l = 0; l < base.label_count(); ++l) ids.emplace(base.label_name(l), l);
    std::vector<std::uint32_t> map(other.label_count(), std::numeric_limits<std::uint32_t>::max());
    for (std::uint32_t l = 0; l < other.label_count(); ++l) {
        auto it = ids.find(other.label_name(l));
        if (it != ids.end()) map[l] = it->second;
    }
    return map;
}

NodeId LabeledTree::lca(NodeId u, NodeId v) const {
    check_node(u);
    check_node(v);
    std::uint32_t a = first_[u], b = first_[v];
    if (a > b) std::swap(a, b);
    int j = std::bit_width(b - a + 1u) - 1;
    std::uint32_t p1 = sparse_[j][a];
    std::uint32_t p2 = sparse_[j][b - (1u << j) + 1];
    return depth_[euler_[p1]] <= depth_[euler_[p2]] ? euler_[p1] : euler_[p2];
}

// Leftmost position in [p..hi-of-node] whose post value is <= q, or 0.
// Pruned subtrees cost O(1) via the subtree minimum, so a query is O(log n).
std::uint32_t LabeledTree::seg_first_le(std::uint32_t node, std::uint32_t lo, std::uint32_t hi,
                                        std::uint32_t p, std::uint32_t q) const {
    if (hi < p || seg_min_post_[node] > q) return 0;
    if (lo == hi) return lo;
    std::uint32_t mid = lo + (hi - lo) / 2;
    std::uint32_t left = seg_first_le(2 * node, lo, mid, p, q);
    if (left != 0) return left;
    return seg_first_le(2 * node + 1, mid + 1, hi, p, q);
}

// Rightmost position in [lo..q] whose pre value is >= p, or 0.
std::uint32_t LabeledTree::seg_last_ge(std::uint32_t node, std::uint32_t lo, std::uint32_t hi,
                                       std::uint32_t q, std::uint32_t p) const {
    if (lo > q || seg_max_pre_[node] < p) return 0;
    if (lo == hi) return lo;
    std::uint32_t mid = lo + (hi - lo) / 2;
    std::uint32_t right = seg_last_ge(2 * node + 1, mid + 1, hi, q, p);
    if (right != 0) return right;
    return seg_last_ge(2 * node, lo, mid, q, p);
}

std::uint32_t LabeledTree::pre_successor(std::uint32_t p, std::uint32_t q) const {
    if (p < 1 || p > n_ + 1 || q > n_) throw std::out_of_range("pre_successor: index out of range");
    if (p > n_ || q == 0) return 0;
    return seg_first_le(1, 1, seg_leaves_, p, q);
}

std::uint32_t LabeledTree::post_predecessor(std::uint32_t q, std::uint32_t p) const {
    if (p < 1 || p > n_ + 1 || q > n_) throw std::out_of_range("post_predecessor: index out of range");
    if (q == 0 || p > n_) return 0;
    return seg_last_ge(1, 1, seg_leaves_, q, p);
}

}  // namespace ted
