#ifndef AOIHARQ_VERSION_HPP
#define AOIHARQ_VERSION_HPP

#define AOIHARQ_VERSION "1.0.0"

#endif
