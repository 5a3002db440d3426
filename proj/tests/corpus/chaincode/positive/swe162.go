package main

var counter int

func Increment() int {
	counter = counter + 1
	return counter
}
