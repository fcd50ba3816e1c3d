#ifndef MUG_ERRORS_HPP
#define MUG_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mug
{

// Every error carries a stable name so the CLI can report it verbatim.
class error : public std::runtime_error
{
public:
    error(std::string name, const std::string &what) : std::runtime_error(what), name_(std::move(name)) {}
    const std::string &name() const noexcept
    {
        return name_;
    }

private:
    std::string name_;
};

#define MUG_DEFINE_ERROR(cls, label)                                                                                   \
    class cls : public error                                                                                           \
    {                                                                                                                  \
    public:                                                                                                            \
        explicit cls(const std::string &what) : error(label, what) {}                                                 \
    };

MUG_DEFINE_ERROR(invalid_degree, "invalid-degree")
MUG_DEFINE_ERROR(invalid_argument, "invalid-argument")
MUG_DEFINE_ERROR(truncation_error, "truncation")
MUG_DEFINE_ERROR(no_solution, "no-solution")
MUG_DEFINE_ERROR(undefined_genus, "undefined-genus")
MUG_DEFINE_ERROR(group_mismatch, "group-mismatch")
MUG_DEFINE_ERROR(index_error, "index")
MUG_DEFINE_ERROR(splitting_violation, "splitting-violation")
MUG_DEFINE_ERROR(non_termination, "non-termination")
MUG_DEFINE_ERROR(consistency_error, "consistency")
MUG_DEFINE_ERROR(arity_error, "arity")
MUG_DEFINE_ERROR(invariant_error, "invariant")
MUG_DEFINE_ERROR(precondition_error, "precondition")

#undef MUG_DEFINE_ERROR

class parse_error : public error
{
public:
    parse_error(std::size_t pos, const std::string &what)
        : error("parse", what + " at position " + std::to_string(pos)), pos_(pos)
    {
    }
    std::size_t position() const noexcept
    {
        return pos_;
    }

private:
    std::size_t pos_;
};

} // namespace mug

#endif
