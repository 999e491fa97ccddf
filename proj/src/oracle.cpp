#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "ted/distance.hpp"

namespace ted {

namespace {

// Plain mutable forest for the script search: nodes in preorder per tree,
// labels in a joint id space covering both inputs.
struct SimNode {
    std::uint32_t label;
    std::vector<SimNode> kids;
};
using SimForest = std::vector<SimNode>;

SimNode convert(const LabeledTree& t, NodeId v, const std::vector<std::uint32_t>& joint) {
    SimNode node{joint[t.label_id(v)], {}};
    for (NodeId c : t.children(v)) node.kids.push_back(convert(t, c, joint));
    return node;
}

void render(const SimForest& f, std::string* out) {
    for (const SimNode& n : f) {
        *out += std::to_string(n.label);
        if (!n.kids.empty()) {
            *out += '(';
            render(n.kids, out);
            *out += ')';
        }
        *out += ',';
    }
}

std::string render_pair(const SimForest& a, const SimForest& b) {
    std::string s;
    render(a, &s);
    s += '|';
    render(b, &s);
    return s;
}

std::uint32_t count_nodes(const SimForest& f) {
    std::uint32_t n = 0;
    for (const SimNode& node : f) {
        n += 1 + count_nodes(node.kids);
    }
    return n;
}

void label_counts(const SimForest& f, std::vector<std::int32_t>* acc, std::int32_t sign) {
    for (const SimNode& n : f) {
        (*acc)[n.label] += sign;
        label_counts(n.kids, acc, sign);
    }
}

bool equal_forests(const SimForest& a, const SimForest& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].label != b[i].label) return false;
        if (!equal_forests(a[i].kids, b[i].kids)) return false;
    }
    return true;
}

// Deletes the node at preorder position `target`, promoting its children in
// place. Returns true once done.
bool delete_at(SimForest* f, std::uint32_t* target) {
    for (std::size_t i = 0; i < f->size(); ++i) {
        if (*target == 0) {
            SimNode victim = std::move((*f)[i]);
            f->erase(f->begin() + static_cast<std::ptrdiff_t>(i));
            f->insert(f->begin() + static_cast<std::ptrdiff_t>(i),
                      std::make_move_iterator(victim.kids.begin()),
                      std::make_move_iterator(victim.kids.end()));
            return true;
        }
        --*target;
        if (delete_at(&(*f)[i].kids, target)) return true;
    }
    return false;
}

bool relabel_at(SimForest* f, std::uint32_t* target, std::uint32_t label) {
    for (SimNode& n : *f) {
        if (*target == 0) {
            n.label = label;
            return true;
        }
        --*target;
        if (relabel_at(&n.kids, target, label)) return true;
    }
    return false;
}

struct Searcher {
    std::vector<std::uint32_t> targets1;  // relabel targets when editing forest 1
    std::vector<std::uint32_t> targets2;
    std::uint32_t num_labels;
    // state string -> largest budget that already failed
    std::unordered_map<std::string, std::uint32_t> failed;

    std::uint32_t lower_bound(const SimForest& a, const SimForest& b) const {
        std::uint32_t na = count_nodes(a), nb = count_nodes(b);
        std::uint32_t size_lb = na >= nb ? na - nb : nb - na;
        std::vector<std::int32_t> diff(num_labels, 0);
        label_counts(a, &diff, 1);
        label_counts(b, &diff, -1);
        std::uint32_t m = 0;
        for (std::int32_t d : diff) m += static_cast<std::uint32_t>(d < 0 ? -d : d);
        return std::max(size_lb, (m + 1) / 2);
    }

    bool search(const SimForest& a, const SimForest& b, std::uint32_t budget) {
        if (equal_forests(a, b)) return true;
        if (budget == 0 || lower_bound(a, b) > budget) return false;
        std::string key = render_pair(a, b);
        auto it = failed.find(key);
        if (it != failed.end() && budget <= it->second) return false;

        bool found = false;
        std::uint32_t na = count_nodes(a), nb = count_nodes(b);
        // Deletions on either side.
        for (std::uint32_t i = 0; i < na && !found; ++i) {
            SimForest next = a;
            std::uint32_t pos = i;
            delete_at(&next, &pos);
            found = search(next, b, budget - 1);
        }
        for (std::uint32_t i = 0; i < nb && !found; ++i) {
            SimForest next = b;
            std::uint32_t pos = i;
            delete_at(&next, &pos);
            found = search(a, next, budget - 1);
        }
        // Relabelings, targets restricted to labels of the opposite tree.
        for (std::uint32_t i = 0; i < na && !found; ++i) {
            for (std::uint32_t l : targets1) {
                SimForest next = a;
                std::uint32_t pos = i;
                relabel_at(&next, &pos, l);
                if (search(next, b, budget - 1)) {
                    found = true;
                    break;
                }
            }
        }
        for (std::uint32_t i = 0; i < nb && !found; ++i) {
            for (std::uint32_t l : targets2) {
                SimForest next = b;
                std::uint32_t pos = i;
                relabel_at(&next, &pos, l);
                if (search(a, next, budget - 1)) {
                    found = true;
                    break;
                }
            }
        }
        if (!found) {
            auto [fit, inserted] = failed.try_emplace(std::move(key), budget);
            if (!inserted && fit->second < budget) fit->second = budget;
        }
        return found;
    }
};

}  // namespace

std::uint32_t ted_oracle_search(const LabeledTree& t1, const LabeledTree& t2) {
    if (t1.node_count() + t2.node_count() > kOracleSizeLimit)
        throw std::invalid_argument("ted_oracle_search: combined size exceeds the search guard");

    // Joint label space: t1's labels first, then t2's unseen labels.
    std::vector<std::uint32_t> joint2 = align_labels(t1, t2);
    std::uint32_t next = t1.label_count();
    for (auto& id : joint2)
        if (id == UINT32_MAX) id = next++;
    std::vector<std::uint32_t> joint1(t1.label_count());
    for (std::uint32_t i = 0; i < joint1.size(); ++i) joint1[i] = i;

    SimForest f1{convert(t1, 1, joint1)};
    SimForest f2{convert(t2, 1, joint2)};

    Searcher s;
    s.num_labels = next;
    // Relabeling an f1 node only ever needs a label appearing in t2, and
    // symmetrically; anything else can never help a unit-cost script.
    for (std::uint32_t l = 0; l < t2.label_count(); ++l) s.targets1.push_back(joint2[l]);
    std::sort(s.targets1.begin(), s.targets1.end());
    s.targets1.erase(std::unique(s.targets1.begin(), s.targets1.end()), s.targets1.end());
    for (std::uint32_t l = 0; l < t1.label_count(); ++l) s.targets2.push_back(l);

    const std::uint32_t max_d = t1.node_count() + t2.node_count();
    for (std::uint32_t d = 0; d <= max_d; ++d) {
        if (s.search(f1, f2, d)) return d;
    }
    throw std::logic_error("ted_oracle_search: no script found within the trivial bound");
}

}  // namespace ted
