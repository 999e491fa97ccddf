#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ted {

// Node ids are 1..n and equal the preorder rank; 0 means "no node".
using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = 0;

// Parse failure carrying the byte offset where it was detected.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t offset)
        : std::runtime_error(message), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

struct ParseOptions {
    // Maximum nesting depth accepted by the parser.
    std::size_t max_depth = 1'000'000;
};

// Immutable ordered rooted tree with interned string labels and traversal
// annotations (preorder/postorder ranks, subtree sizes, depths, an O(1) LCA
// structure and O(log n) threshold-successor structures).
//
// Construction normalizes node ids to preorder ranks, so pre(v) == v and the
// root is node 1. Instances are safe to share read-only across threads.
class LabeledTree {
public:
    // Parses bracket notation: label, optionally followed by a parenthesized
    // comma-separated child list. Labels are bare (no '(' ')' ',' '"' or
    // whitespace) or double-quoted with "" as the escaped quote.
    static LabeledTree parse(std::string_view text, const ParseOptions& opts = {});

    // Builds a tree from an explicit structure: parent[i] is an index into
    // labels with parent[i] < i, or npos for the root (index 0 only).
    // Sibling order is index order.
    static LabeledTree from_structure(const std::vector<std::string>& labels,
                                      const std::vector<std::size_t>& parent);

    // Canonical bracket form: no whitespace, labels quoted only when needed.
    // parse(serialize()) reproduces the tree exactly.
    std::string serialize() const;

    std::uint32_t node_count() const noexcept { return n_; }

    std::uint32_t label_id(NodeId v) const { check_node(v); return label_[v]; }
    const std::string& label(NodeId v) const { check_node(v); return label_names_[label_[v]]; }
    std::uint32_t label_count() const noexcept { return static_cast<std::uint32_t>(label_names_.size()); }
    const std::string& label_name(std::uint32_t label_id) const { return label_names_.at(label_id); }

    NodeId parent(NodeId v) const { check_node(v); return parent_[v]; }
    std::span<const NodeId> children(NodeId v) const {
        check_node(v);
        return {child_.data() + child_off_[v], child_.data() + child_off_[v + 1]};
    }

    std::uint32_t pre(NodeId v) const { check_node(v); return v; }
    std::uint32_t post(NodeId v) const { check_node(v); return post_[v]; }
    NodeId node_at_pre(std::uint32_t p) const { check_node(p); return p; }
    NodeId node_at_post(std::uint32_t q) const { check_node(q); return node_at_post_[q]; }

    std::uint32_t subtree_size(NodeId v) const { check_node(v); return size_[v]; }
    std::uint32_t depth(NodeId v) const { check_node(v); return depth_[v]; }

    // Ancestor-or-self test via the preorder/postorder interval characterization.
    bool is_ancestor(NodeId u, NodeId v) const {
        check_node(u);
        check_node(v);
        return u <= v && post_[u] >= post_[v];
    }

    // Lowest common ancestor; O(1) after construction.
    NodeId lca(NodeId u, NodeId v) const;

    // Smallest preorder index p' >= p whose node has postorder index <= q,
    // or 0 if none. Requires 1 <= p <= n+1 and q <= n. O(log n).
    std::uint32_t pre_successor(std::uint32_t p, std::uint32_t q) const;

    // Largest postorder index q' <= q whose node has preorder index >= p,
    // or 0 if none. Requires q <= n and 1 <= p <= n+1. O(log n).
    std::uint32_t post_predecessor(std::uint32_t q, std::uint32_t p) const;

private:
    LabeledTree() = default;

    void check_node(NodeId v) const {
        if (v == kNoNode || v > n_)
            throw std::out_of_range("invalid node id " + std::to_string(v));
    }

    static LabeledTree build(std::vector<std::string>&& labels,
                             std::vector<std::size_t>&& parent);
    void annotate();

    std::uint32_t seg_first_le(std::uint32_t node, std::uint32_t lo, std::uint32_t hi,
                               std::uint32_t p, std::uint32_t q) const;
    std::uint32_t seg_last_ge(std::uint32_t node, std::uint32_t lo, std::uint32_t hi,
                              std::uint32_t q, std::uint32_t p) const;

    std::uint32_t n_ = 0;
    std::vector<std::uint32_t> label_;      // [1..n] -> label id
    std::vector<std::string> label_names_;  // label id -> text, dense by first use
    std::vector<NodeId> parent_;            // [1..n], 0 for the root
    std::vector<std::uint32_t> child_off_;  // CSR offsets into child_
    std::vector<NodeId> child_;             // children in sibling order
    std::vector<std::uint32_t> post_;       // [1..n]
    std::vector<NodeId> node_at_post_;      // [1..n]
    std::vector<std::uint32_t> size_;       // [1..n]
    std::vector<std::uint32_t> depth_;      // [1..n], root 0

    // LCA: Euler tour + sparse table of min-depth positions.
    std::vector<NodeId> euler_;
    std::vector<std::uint32_t> first_;
    std::vector<std::vector<std::uint32_t>> sparse_;

    // Balanced range trees over traversal ranks, walked top-down for the
    // threshold-successor queries.
    std::uint32_t seg_leaves_ = 1;
    std::vector<std::uint32_t> seg_min_post_;  // min post over preorder positions
    std::vector<std::uint32_t> seg_max_pre_;   // max pre over postorder positions
};

// For each label id of `other`, the matching label id in `base`, or
// UINT32_MAX when the label does not occur in `base`.
std::vector<std::uint32_t> align_labels(const LabeledTree& base, const LabeledTree& other);

}  // namespace ted
