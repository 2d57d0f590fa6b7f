#pragma once

#include "magic_angles/angle.hpp"
#include "magic_angles/components.hpp"
#include "magic_angles/errors.hpp"
#include "magic_angles/expansion.hpp"
#include "magic_angles/interval.hpp"
#include "magic_angles/lamination.hpp"
#include "magic_angles/magic.hpp"
#include "magic_angles/parse.hpp"
#include "magic_angles/verify.hpp"
#include "magic_angles/word.hpp"
#include "magic_angles/words.hpp"
