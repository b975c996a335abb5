#ifndef WEBSK_WEBSK_HPP
#define WEBSK_WEBSK_HPP

#include "websk/cobmap.hpp"
#include "websk/error.hpp"
#include "websk/exactness.hpp"
#include "websk/foam.hpp"
#include "websk/isomorphism.hpp"
#include "websk/numeric.hpp"
#include "websk/random_web.hpp"
#include "websk/tait.hpp"
#include "websk/web.hpp"

#endif  // WEBSK_WEBSK_HPP
