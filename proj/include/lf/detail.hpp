#ifndef LF_DETAIL_HPP
#define LF_DETAIL_HPP

namespace lf::detail {

template <class... Ts>
struct overload : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overload(Ts...) -> overload<Ts...>;

}  // namespace lf::detail

#endif
